#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

#include "coxeter/errors.hpp"

namespace coxeter {

/// Hard per-item limits. Exceeding any of them raises CapExceeded; callers
/// never receive partial answers.
struct Budget {
  std::size_t max_elements = 200'000;
  std::size_t max_tuples = 20'000'000;
  std::size_t max_mem_mb = 4096;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static Budget unlimited() {
    Budget b;
    b.max_tuples = static_cast<std::size_t>(-1);
    b.max_mem_mb = static_cast<std::size_t>(-1) >> 20;
    return b;
  }

  void with_timeout(double seconds) {
    if (seconds > 0)
      deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(seconds));
  }

  void charge_elements(std::size_t n) const {
    if (n > max_elements) throw CapExceeded("max-elements", std::to_string(n) + " elements");
  }
  void charge_tuples(std::size_t n) const {
    if (n > max_tuples) throw CapExceeded("max-tuples", std::to_string(n) + " tuples");
  }
  void charge_bytes(std::size_t bytes) const {
    if (bytes / (1024 * 1024) >= max_mem_mb)
      throw CapExceeded("max-mem-mb", std::to_string(bytes >> 20) + " MB");
  }
  void check_time() const {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
      throw CapExceeded("timeout-s", "deadline passed");
  }
};

}  // namespace coxeter
