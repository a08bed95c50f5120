#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace flatcover {

inline constexpr std::uint64_t kDefaultGuard = 100'000'000ULL;

/// Enumeration cap: FLATCOVER_GUARD when set to a positive integer,
/// otherwise the given fallback.
inline std::uint64_t guard_from_env(std::uint64_t fallback = kDefaultGuard) {
  const char* v = std::getenv("FLATCOVER_GUARD");
  if (v == nullptr || *v == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long cap = std::stoull(v, &used);
    if (used != std::string(v).size() || cap == 0) throw std::invalid_argument(v);
    return cap;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("FLATCOVER_GUARD must be a positive integer, got '") + v + "'");
  }
}

}  // namespace flatcover
