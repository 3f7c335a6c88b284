#pragma once

#include <cstdint>
#include <string_view>

namespace orbitforge {

// Limits on every exhaustive computation. Exceeding one raises CapExceeded
// instead of running unbounded.
struct Caps {
  std::uint64_t order_cap = 1'000'000;      // materialized group order
  std::uint64_t work_cap = 10'000'000;      // tuples / subsets / descent nodes
  std::uint64_t index_cap = 10'000;         // [ambient : base] in subgroups_above
  std::uint64_t partition_cap = 12;         // degree for invariant_partitions
  std::uint64_t oracle_cap = 13;            // n for p_k_bruteforce
  std::uint64_t orbit_cap = 6;              // orbits in enumerate_unary_reducts
  std::uint64_t count_cap = 8;              // n for symbolic orbit counts
  std::uint64_t cover_order_cap = 10'000;   // prod |F_i|! in covering reducts
  std::uint64_t fiber_sum_cap = 8;          // sum |F_i| in covering reducts
  std::uint64_t denominator_cap = 16;       // denominators tried by find_upper_c

  /// Applies comma- or whitespace-separated `key=value` overrides.
  /// Unknown keys and malformed values raise ValidationError.
  void apply_overrides(std::string_view text);
};

}  // namespace orbitforge
