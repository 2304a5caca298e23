#include "bohrsets/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bohrsets {

unsigned thread_count() {
  if (const char* env = std::getenv("BOHRSETS_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace bohrsets
