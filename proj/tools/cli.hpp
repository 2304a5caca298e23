#pragma once

// Front end for the bohrsets executable. Every command writes one JSON record
// per check (JSON lines) and a short human summary on stderr.
//
// Exit status: 0 when every check passed, 1 on violations, 2 on a parse or
// precondition error, 3 when an exhaustive request exceeds its budget.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bohrsets/report.hpp"

namespace bohrsets::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
  std::string command;
  std::uint32_t p = 2;
  std::string spec;
  std::string shifts;
  std::string E;
  std::size_t level = 0;  // 0 = every level
  unsigned scale = 0;
  unsigned dmax = 1;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::uint64_t budget = std::uint64_t{1} << 32;
  std::string output = "-";
  std::string mode = "exhaustive";
  std::string preset;
  std::string levels;
  std::string cell;
  std::string balls;
  std::string epsilon = "1/10";
  std::uint64_t exact_bits = std::uint64_t{1} << 24;
  bool cross_check = false;
  bool generation = false;
  bool fast_path = true;
};

std::vector<std::string> commands();
/// Config keys in canonical order ("exact-bits", "cross-check", ...).
std::vector<std::string> config_keys();

/// Sets one key; throws std::invalid_argument for unknown keys or bad values.
void apply(RunConfig& config, std::string_view key, std::string_view value);
/// Plain "key = value" lines; '#' starts a comment.
void apply_config_text(RunConfig& config, std::string_view text);
/// Every key in canonical order with normalised values; parsing it back
/// yields the same config.
std::string canonical_config(const RunConfig& config);

nlohmann::ordered_json to_json(const CheckRecord& record);

/// Runs a parsed config. Records go to `out` unless config.output names a file.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// argv entry point used by main().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bohrsets::cli
