#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbitforge/caps.hpp"
#include "orbitforge/numeric.hpp"

// Set partitions with bounded block size, and exact checks of the growth
// inequalities they satisfy. Every comparison runs in integer arithmetic.
namespace orbitforge::partitions {

/// Calls `visit(rgs)` for every set partition of {0,...,n-1}, encoded as a
/// restricted growth string (rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i))),
/// in lexicographic order. `visit` may return false to stop early.
template <typename Visitor>
void for_each_set_partition(std::size_t n, Visitor&& visit) {
  std::vector<std::uint32_t> rgs(n, 0);
  std::vector<std::uint32_t> prefix_max(n, 0);  // max of rgs[0..i]
  while (true) {
    if (!visit(std::span<const std::uint32_t>(rgs))) return;
    // Rightmost position whose value can still grow.
    std::size_t i = n;
    while (i > 1 && rgs[i - 1] == prefix_max[i - 2] + 1) --i;
    if (i <= 1) return;
    --i;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

BigInt bell_number(unsigned n);
BigInt stirling2(unsigned n, unsigned blocks);

/// Partitions of an n-set with every block of size <= k, by the recursion
/// over the block containing the last element. Memoized per k.
BigInt bounded_block_partitions(unsigned k, unsigned n);

/// Same count by exhaustive enumeration of all set partitions. Independent
/// oracle for bounded_block_partitions; n is limited by caps.oracle_cap.
BigInt bounded_block_partitions_bruteforce(unsigned k, unsigned n, const Caps& caps = {});

/// Partitions of a (k n)-set into blocks of size exactly k, by recursion.
BigInt uniform_block_partitions(unsigned k, unsigned n);
/// (kn)! / (n! (k!)^n).
BigInt uniform_block_partitions_closed_form(unsigned k, unsigned n);

struct CountTable {
  unsigned k = 1;
  std::vector<BigInt> values;  // values[n] for n = 0..n_max
};

CountTable count_table(unsigned k, unsigned n_max);

/// Decides p_k(n) >= n^{q n} for q = (k-1)/k - epsilon. True when q <= 0.
bool check_lower_bound(unsigned k, const Rational& epsilon, unsigned n);

/// Least N <= n_max such that check_lower_bound holds for every n in
/// [N, n_max]; nullopt when it fails at n_max itself.
std::optional<unsigned> lower_bound_onset(unsigned k, const Rational& epsilon, unsigned n_max);

/// True iff C(n-1,i) < (1/k) (n (n-1) ... (n-i))^d for every i < k with
/// C(n-1,i) > 0. Requires (k-1)/k < d < 1.
bool check_upper_bound_termwise(unsigned k, const Rational& d, unsigned n);

struct UpperConstant {
  Rational c;
  // Least N such that the termwise check holds for all n in (N, n_max].
  unsigned termwise_onset = 0;
};

/// Smallest c with denominator <= caps.denominator_cap such that
/// p_k(n) < c n^{dn} for every 1 <= n <= n_max. Requires d > (k-1)/k.
UpperConstant find_upper_constant(unsigned k, const Rational& d, unsigned n_max, const Caps& caps = {});

/// Exact test of p < c n^{dn} for rational c, d >= 0.
bool below_c_n_pow_dn(const BigInt& value, const Rational& c, const Rational& d, unsigned n);

}  // namespace orbitforge::partitions
