#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bohrsets/enumeration.hpp"

namespace bohrsets {

enum class Mode { exhaustive, sampled };

inline std::string to_string(Mode mode) { return mode == Mode::exhaustive ? "exhaustive" : "sampled"; }

inline Mode parse_mode(std::string_view text) {
  if (text == "exhaustive") return Mode::exhaustive;
  if (text == "sampled") return Mode::sampled;
  throw std::invalid_argument("mode must be 'exhaustive' or 'sampled'");
}

struct VerifyOptions {
  Mode mode = Mode::exhaustive;
  /// Trials per check in sampled mode.
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  Budget budget{};
};

/// Sampled checks run in batches of this many trials; batch b of check q draws
/// from SplitRng(seed).split(q).split(b), so results do not depend on threads.
inline constexpr std::uint64_t kSampleBatch = 256;

}  // namespace bohrsets
