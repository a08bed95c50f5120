#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flatcover {

/// An exact method refused to run because its search space exceeds the
/// configured cap. Exact modes never fall back to a heuristic.
struct GuardError : std::runtime_error {
  GuardError(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error("instance too large for exact mode: " + what + " (" + std::to_string(requested) +
                           " > cap " + std::to_string(cap) + ")"),
        requested(requested),
        cap(cap) {}
  std::uint64_t requested;
  std::uint64_t cap;
};

/// A construction invariant was violated. Raised instead of repairing.
struct IntegrityError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace flatcover
