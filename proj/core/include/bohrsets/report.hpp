#pragma once

// Plain result records shared by every verification routine. The CLI turns
// them into JSON lines; tests inspect them directly.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bohrsets {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct CheckRecord {
  std::string check;
  /// Short name of the mathematical statement the check instantiates.
  std::string lemma_tag;
  KeyValues params;
  std::string mode;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> witnesses;
  KeyValues exact_values;
  std::string note;
  bool skipped = false;

  bool passed() const noexcept { return violations == 0; }
};

/// Trial and violation counter keeping the first few counterexamples.
class Tally {
 public:
  static constexpr std::size_t kMaxWitnesses = 4;

  template <class MakeWitness>
  void check(bool ok, MakeWitness&& make_witness) {
    ++trials_;
    if (ok) return;
    ++violations_;
    if (witnesses_.size() < kMaxWitnesses) witnesses_.push_back(make_witness());
  }

  /// Appends another tally; witnesses keep their order.
  void merge(const Tally& other);
  /// Copies trials, violations and witnesses into a record.
  void fill(CheckRecord& record) const;

  std::uint64_t trials() const noexcept { return trials_; }
  std::uint64_t violations() const noexcept { return violations_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  std::uint64_t trials_ = 0;
  std::uint64_t violations_ = 0;
  std::vector<std::string> witnesses_;
};

/// One-line human summary, e.g. "shift-lemma (iii) exhaustive: 4608 trials, 0 violations".
std::string summary_line(const CheckRecord& record);

}  // namespace bohrsets
