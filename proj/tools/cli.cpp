#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "bohrsets/bohr.hpp"
#include "bohrsets/construction.hpp"
#include "bohrsets/hamming.hpp"
#include "bohrsets/partition.hpp"
#include "bohrsets/partition_count.hpp"
#include "bohrsets/shift_lemma.hpp"

namespace bohrsets::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(key) + ": expected a nonnegative integer, got '" + std::string(text) +
                                "'");
  }
  return value;
}

unsigned parse_unsigned(std::string_view key, std::string_view text) {
  const std::uint64_t value = parse_u64(key, text);
  if (value > 0xffffffffu) throw std::invalid_argument(std::string(key) + ": value too large");
  return static_cast<unsigned>(value);
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> out;
  if (trim(text).empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<unsigned> parse_list(std::string_view key, std::string_view text) {
  std::vector<unsigned> out;
  for (const auto item : split_commas(text)) out.push_back(parse_unsigned(key, item));
  return out;
}

template <class T>
std::string join(const std::vector<T>& values, const std::function<std::string(const T&)>& show) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : ",") + show(v);
  return out;
}

std::string join_numbers(const std::vector<unsigned>& values) {
  return join<unsigned>(values, [](const unsigned& v) { return std::to_string(v); });
}

std::vector<BallSpec> parse_balls(std::string_view text) {
  std::vector<BallSpec> out;
  for (const auto item : split_commas(text)) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("balls: '" + std::string(item) + "' is not n:k");
    out.emplace_back(parse_unsigned("balls", trim(item.substr(0, colon))),
                     parse_u64("balls", trim(item.substr(colon + 1))));
  }
  return out;
}

std::string balls_string(const std::vector<BallSpec>& balls) {
  return join<BallSpec>(balls, [](const BallSpec& b) { return std::to_string(b.n) + ":" + std::to_string(b.k); });
}

std::vector<Digit> parse_E(std::string_view text) {
  std::vector<Digit> out;
  for (const unsigned x : parse_list("E", text)) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

mpq_class parse_rational(std::string_view text) {
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("epsilon: expected a rational such as 1/10, got '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions options;
  options.mode = parse_mode(c.mode);
  options.samples = c.samples;
  options.seed = c.seed;
  options.budget = Budget{c.budget};
  return options;
}

ConstructionParams make_construction(const RunConfig& c) {
  const mpq_class epsilon = parse_rational(c.epsilon);
  if (!c.preset.empty()) {
    if (!c.levels.empty() || !c.E.empty()) throw std::invalid_argument("preset cannot be combined with levels or E");
    const ConstructionParams base = ConstructionParams::preset(c.preset);
    return ConstructionParams(base.prime(), base.levels(), base.E(), c.level ? c.level : base.L(), epsilon);
  }
  if (c.levels.empty()) throw std::invalid_argument("construction needs either preset or levels");
  const Prime p(c.p);
  auto levels = ConstructionParams::parse_levels(c.levels);
  const std::size_t L = c.level ? c.level : levels.size();
  return ConstructionParams(p, std::move(levels), c.E.empty() ? default_E(p) : parse_E(c.E), L, epsilon);
}

std::string digits_string(const std::vector<Digit>& v) {
  return join<Digit>(v, [](const Digit& x) { return std::to_string(x); });
}

// --- commands --------------------------------------------------------------

std::vector<CheckRecord> run_verify_lemmas(const RunConfig& c) {
  if (c.spec.empty()) throw std::invalid_argument("verify-lemmas needs spec");
  const PartitionSpec spec = PartitionSpec::parse(Prime(c.p), c.spec);
  std::vector<unsigned> shifts = parse_list("shifts", c.shifts);
  if (shifts.empty()) shifts.assign(spec.depth(), 1);
  return verify_shift_lemma(spec, shifts, verify_options(c));
}

std::vector<CheckRecord> run_build(const RunConfig& c) {
  const ConstructionParams params = make_construction(c);
  CountOptions options;
  options.max_exact_bits = c.exact_bits;
  std::vector<CheckRecord> out;
  for (const DensityRow& row : density_report(params, options)) {
    CheckRecord r;
    r.check = "density";
    r.lemma_tag = "cell-density";
    r.params = {{"p", std::to_string(params.prime().value())},
                {"levels", params.levels_string()},
                {"E", digits_string(params.E())},
                {"L", std::to_string(params.L())},
                {"level", std::to_string(row.level)},
                {"epsilon", params.epsilon().get_str()}};
    r.mode = row.counts.exact ? "exact" : "log-space";
    r.trials = 1;
    if (row.counts.exact) {
      r.exact_values = {{"cell", row.counts.cell.get_str()},
                        {"z", row.counts.z.get_str()},
                        {"group", row.counts.group.get_str()},
                        {"fraction", row.fraction.get_str()}};
      if (row.concatenation_bound) r.exact_values.emplace_back("concatenation_bound", row.concatenation_bound->get_str());
    } else {
      std::ostringstream log2;
      log2.precision(17);
      log2 << row.counts.log2_cell << " +- " << row.counts.log2_error;
      r.exact_values = {{"log2_cell", log2.str()}};
    }
    std::ostringstream approx;
    approx.precision(17);
    approx << row.fraction_approx;
    r.exact_values.emplace_back("fraction_approx", approx.str());
    r.exact_values.emplace_back("target", row.target.get_str());
    r.exact_values.emplace_back("exceeds_target", row.exceeds_target ? "true" : "false");
    if (!row.counts.vacuous_levels.empty()) r.note = "vacuous levels present; cells are empty";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckRecord> run_check_construction(const RunConfig& c) {
  return verify_disjointness(make_construction(c), verify_options(c));
}

std::vector<CheckRecord> run_bohr_density(const RunConfig& c) {
  const Prime p(c.p);
  if (c.scale == 0) throw std::invalid_argument("bohr-density needs scale");
  const Budget budget{c.budget};
  std::vector<CheckRecord> out;
  const std::vector<BallSpec> balls = parse_balls(c.balls);
  if (!balls.empty()) {
    GroupSubset set(p, c.scale, budget);
    for (const BallSpec& ball : balls) {
      if (ball.n > c.scale) throw std::invalid_argument("ball scale above the ambient scale");
      const GroupElement one = GroupElement::constant(p, ball.n, FieldValue(p, 1));
      for (const GroupElement& u : enumerate_ball(p, ball, budget)) set.insert(u + one);
    }
    DensityOptions options;
    options.fast_path = c.fast_path;
    options.budget = budget;
    const DensityResult result = dense_upto(set, c.dmax, options);
    CheckRecord r;
    r.check = "bohr-density";
    r.lemma_tag = "coset-coverage";
    r.params = {{"p", std::to_string(p.value())},
                {"scale", std::to_string(c.scale)},
                {"dmax", std::to_string(c.dmax)},
                {"balls", balls_string(balls)}};
    r.mode = "exhaustive";
    r.trials = result.kernels_checked;
    r.violations = result.dense ? 0 : 1;
    if (result.miss) {
      r.witnesses.push_back("kernel of " + result.miss->system.to_string() + " misses value " +
                            digits_string(result.miss->missing));
    }
    r.exact_values = {{"set_size", std::to_string(set.size())},
                      {"universe", std::to_string(set.universe())},
                      {"kernels_checked", std::to_string(result.kernels_checked)},
                      {"dense", result.dense ? "true" : "false"}};
    out.push_back(std::move(r));
  }
  if (c.generation) {
    for (auto& r : verify_hamming_generation(p, c.scale, c.dmax, budget)) out.push_back(std::move(r));
  }
  if (out.empty()) throw std::invalid_argument("bohr-density needs balls or generation");
  return out;
}

std::vector<CheckRecord> run_count(const RunConfig& c) {
  if (c.spec.empty()) throw std::invalid_argument("count needs spec");
  const PartitionSpec spec = PartitionSpec::parse(Prime(c.p), c.spec);
  CountOptions options;
  options.max_exact_bits = c.exact_bits;
  const PartitionCounts counts = count_partition(spec, options);

  CheckRecord r;
  r.check = "count";
  r.lemma_tag = "cell-count";
  r.params = {{"p", std::to_string(c.p)}, {"spec", spec.to_string()}};
  if (!c.cell.empty()) r.params.emplace_back("cell", CellLabel::parse(c.cell).to_string());
  r.mode = counts.exact ? "exact" : "log-space";
  r.trials = 1;
  if (counts.exact) {
    if (!c.cell.empty()) {
      const CellLabel label = CellLabel::parse(c.cell);
      if (label.is_cell() && label.value() >= c.p) throw std::invalid_argument("cell label outside F_p");
      r.exact_values.emplace_back("count", counts.size_of(label).get_str());
    } else {
      r.exact_values.emplace_back("cell", counts.cell.get_str());
      r.exact_values.emplace_back("z", counts.z.get_str());
    }
    r.exact_values.emplace_back("group", counts.group.get_str());
    if (spec.depth() == 1) {
      const mpz_class bound = z_bound(spec.prime(), spec.levels()[0].n, spec.levels()[0].m);
      r.exact_values.emplace_back("z_bound", bound.get_str());
      r.violations += counts.z > bound ? 1 : 0;
      if (counts.z > bound) r.witnesses.push_back("|Z| = " + counts.z.get_str() + " above " + bound.get_str());
    }
  } else {
    std::ostringstream s;
    s.precision(17);
    s << counts.log2_cell;
    r.exact_values.emplace_back("log2_cell", s.str());
    s.str("");
    s << counts.log2_group;
    r.exact_values.emplace_back("log2_group", s.str());
    s.str("");
    s << counts.log2_error;
    r.exact_values.emplace_back("log2_error", s.str());
  }
  if (!counts.vacuous_levels.empty()) r.note = "vacuous levels present; cells are empty";

  if (c.cross_check) {
    if (!counts.exact) throw std::invalid_argument("cross-check needs exact counting");
    require_within(counts.group, Budget{c.budget}, "cross-check enumeration");
    const Partition partition(spec);
    std::vector<std::uint64_t> tally(c.p + 1, 0);
    for (const GroupElement& g : enumerate_group(spec.prime(), spec.scale(), Budget{c.budget})) {
      const CellLabel label = partition.classify(g);
      ++tally[label.is_z() ? c.p : label.value()];
    }
    for (Digit x = 0; x <= c.p; ++x) {
      const mpz_class want = x == c.p ? counts.z : counts.cell;
      ++r.trials;
      if (want != tally[x]) {
        ++r.violations;
        r.witnesses.push_back((x == c.p ? std::string("Z") : std::to_string(x)) + ": enumerated " +
                              std::to_string(tally[x]) + ", counted " + want.get_str());
      }
    }
    r.exact_values.emplace_back("cross_check", "enumeration");
  }
  return {r};
}

std::vector<CheckRecord> run_brute_theorem2(const RunConfig& c) {
  return theorem2_brute(Prime(c.p), c.scale, verify_options(c));
}

std::vector<CheckRecord> dispatch(const RunConfig& c) {
  if (c.command == "verify-lemmas") return run_verify_lemmas(c);
  if (c.command == "build") return run_build(c);
  if (c.command == "check-construction") return run_check_construction(c);
  if (c.command == "bohr-density") return run_bohr_density(c);
  if (c.command == "count") return run_count(c);
  if (c.command == "brute-theorem2") return run_brute_theorem2(c);
  throw std::invalid_argument("unknown command '" + c.command + "'");
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> commands() {
  return {"verify-lemmas", "build", "check-construction", "bohr-density", "count", "brute-theorem2"};
}

std::vector<std::string> config_keys() {
  return {"command", "p",     "mode",  "samples", "seed",  "budget",     "output",      "spec",
          "shifts",  "preset", "levels", "E",      "level", "epsilon",    "cell",        "scale",
          "dmax",    "balls", "exact-bits", "cross-check", "generation", "fast-path"};
}

void apply(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  const std::string v(value);
  if (key == "command") {
    const auto all = commands();
    if (std::find(all.begin(), all.end(), v) == all.end()) throw std::invalid_argument("unknown command '" + v + "'");
    c.command = v;
  } else if (key == "p") {
    c.p = Prime(parse_u64(key, value)).value();
  } else if (key == "mode") {
    c.mode = to_string(parse_mode(value));
  } else if (key == "samples") {
    c.samples = parse_u64(key, value);
  } else if (key == "seed") {
    c.seed = parse_u64(key, value);
  } else if (key == "budget") {
    c.budget = parse_u64(key, value);
  } else if (key == "output") {
    c.output = v.empty() ? "-" : v;
  } else if (key == "spec") {
    c.spec = v;
  } else if (key == "shifts") {
    c.shifts = join_numbers(parse_list(key, value));
  } else if (key == "preset") {
    if (!v.empty()) ConstructionParams::preset(v);
    c.preset = v;
  } else if (key == "levels") {
    c.levels = v;
  } else if (key == "E") {
    c.E = digits_string(parse_E(value));
  } else if (key == "level") {
    c.level = parse_unsigned(key, value);
  } else if (key == "epsilon") {
    c.epsilon = parse_rational(value).get_str();
  } else if (key == "cell") {
    c.cell = v.empty() ? v : CellLabel::parse(value).to_string();
  } else if (key == "scale") {
    c.scale = parse_unsigned(key, value);
  } else if (key == "dmax") {
    c.dmax = parse_unsigned(key, value);
  } else if (key == "balls") {
    c.balls = balls_string(parse_balls(value));
  } else if (key == "exact-bits") {
    c.exact_bits = parse_u64(key, value);
  } else if (key == "cross-check") {
    c.cross_check = parse_bool(key, value);
  } else if (key == "generation") {
    c.generation = parse_bool(key, value);
  } else if (key == "fast-path") {
    c.fast_path = parse_bool(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string canonical_config(const RunConfig& c) {
  const auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string spec = c.spec;
  if (!spec.empty()) spec = PartitionSpec::parse(Prime(c.p), spec).to_string();
  std::string levels = c.levels;
  if (!levels.empty()) {
    levels.clear();
    for (const auto& l : ConstructionParams::parse_levels(c.levels)) {
      levels += (levels.empty() ? "" : ",") + std::to_string(l.n) + ":" + std::to_string(l.m) + ":" +
                std::to_string(l.k);
    }
  }
  const std::map<std::string, std::string> values = {
      {"command", c.command},
      {"p", std::to_string(c.p)},
      {"mode", c.mode},
      {"samples", std::to_string(c.samples)},
      {"seed", std::to_string(c.seed)},
      {"budget", std::to_string(c.budget)},
      {"output", c.output},
      {"spec", spec},
      {"shifts", c.shifts},
      {"preset", c.preset},
      {"levels", levels},
      {"E", c.E},
      {"level", std::to_string(c.level)},
      {"epsilon", c.epsilon},
      {"cell", c.cell},
      {"scale", std::to_string(c.scale)},
      {"dmax", std::to_string(c.dmax)},
      {"balls", c.balls},
      {"exact-bits", std::to_string(c.exact_bits)},
      {"cross-check", flag(c.cross_check)},
      {"generation", flag(c.generation)},
      {"fast-path", flag(c.fast_path)},
  };
  std::string out;
  for (const auto& key : config_keys()) {
    const std::string& v = values.at(key);
    out += key + (v.empty() ? " =" : " = " + v) + "\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const CheckRecord& record) {
  nlohmann::ordered_json j;
  j["check"] = record.check;
  j["lemma_tag"] = record.lemma_tag;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.params) j["params"][k] = v;
  j["mode"] = record.mode;
  j["trials"] = record.trials;
  j["violations"] = record.violations;
  j["witnesses"] = record.witnesses;
  j["exact_values"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.exact_values) j["exact_values"][k] = v;
  if (!record.note.empty()) j["note"] = record.note;
  if (record.skipped) j["skipped"] = true;
  return j;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<CheckRecord> records;
  try {
    if (config.command.empty()) throw std::invalid_argument("no command given");
    records = dispatch(config);
    for (CheckRecord& r : records) {
      if (r.mode == "sampled") r.params.emplace_back("seed", std::to_string(config.seed));
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output != "-") {
    file.open(config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << config.output << " for writing\n";
      return kUsage;
    }
    sink = &file;
  }
  std::uint64_t violations = 0;
  for (const CheckRecord& r : records) {
    *sink << to_json(r).dump() << "\n";
    err << summary_line(r) << "\n";
    violations += r.violations;
  }
  sink->flush();
  err << records.size() << " checks, " << violations << " violations\n";
  return violations == 0 ? kOk : kViolations;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bias-pattern partitions of G_p and difference-set checks", "bohrsets"};
  std::string command;
  std::string config_path;
  bool print_config = false;
  app.add_option("command", command, "One of: verify-lemmas, build, check-construction, bohr-density, count, "
                                     "brute-theorem2");
  app.add_option("--config", config_path, "File of 'key = value' lines; flags override it");
  app.add_flag("--print-config", print_config, "Print the canonical config and exit");

  const std::vector<std::string> bool_keys = {"cross-check", "generation", "fast-path"};
  std::map<std::string, std::string> given;
  std::map<std::string, bool> given_flags;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : config_keys()) {
    if (key == "command") continue;
    if (std::find(bool_keys.begin(), bool_keys.end(), key) != bool_keys.end()) {
      options[key] = app.add_flag("--" + key, given_flags[key]);
    } else {
      options[key] = app.add_option("--" + key, given[key]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kOk : kUsage;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot read config file " + config_path);
      std::stringstream text;
      text << in.rdbuf();
      apply_config_text(config, text.str());
    }
    if (!command.empty()) apply(config, "command", command);
    for (const auto& [key, option] : options) {
      if (option->count() == 0) continue;
      if (given_flags.count(key)) {
        apply(config, key, given_flags[key] ? "true" : "false");
      } else {
        apply(config, key, given[key]);
      }
    }
    if (print_config) {
      out << canonical_config(config);
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return run(config, out, err);
}

}  // namespace bohrsets::cli
