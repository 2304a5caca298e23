#include "bohrsets/report.hpp"

namespace bohrsets {

void Tally::merge(const Tally& other) {
  trials_ += other.trials_;
  violations_ += other.violations_;
  for (const auto& w : other.witnesses_) {
    if (witnesses_.size() >= kMaxWitnesses) break;
    witnesses_.push_back(w);
  }
}

void Tally::fill(CheckRecord& record) const {
  record.trials = trials_;
  record.violations = violations_;
  record.witnesses = witnesses_;
}

std::string summary_line(const CheckRecord& record) {
  std::string out = record.check + " [" + record.lemma_tag + "] " + record.mode + ": ";
  if (record.skipped) {
    out += "skipped";
  } else {
    out += std::to_string(record.trials) + " trials, " + std::to_string(record.violations) + " violations";
  }
  if (!record.note.empty()) out += " (" + record.note + ")";
  return out;
}

}  // namespace bohrsets
