#include "krank/parallel.hpp"

#include <cstdlib>
#include <string>

namespace krank {

int resolve_workers(int fallback) {
  if (const char* env = std::getenv("WORKERS")) {
    try {
      const int value = std::stoi(env);
      if (value > 0) return value;
    } catch (const std::exception&) {
    }
  }
  if (fallback > 0) return fallback;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace krank
