#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitforge/numeric.hpp"
#include "orbitforge/orbits.hpp"

// Exact checks of orbit-count sequences against c^n and c n^{dn}, and a
// heuristic label built on them.
namespace orbitforge::growth {

/// count <= c^n for every entry.
bool verify_exp_bound(const OrbitCountSequence& seq, const BigInt& c);
/// count <= c n^{dn} for every entry, as count^b <= c^b n^{an} for d = a/b.
/// Requires 0 < d < 1.
bool verify_ndn_bound(const OrbitCountSequence& seq, const BigInt& c, const Rational& d);

/// Enclosure of ln(count) / (n ln n); bounds are multiples of 1e-6.
struct ExponentEstimate {
  unsigned n = 0;
  Rational lower, upper;
};

struct NdnBound {
  BigInt c;
  Rational d;
  bool holds = false;
};

struct GrowthReport {
  std::vector<ExponentEstimate> exponents;
  std::vector<NdnBound> verdicts;  // for the bounds passed to classify
  std::string label;               // constant, at-most-exponential, sub-factorial (d<1), fast
  std::optional<BigInt> exp_witness;
  std::optional<NdnBound> ndn_witness;
  // Finite prefixes cannot decide asymptotic growth; the label is a guess
  // backed by the exact verdicts above.
  static constexpr bool heuristic = true;
};

/// Constants c searched by classify.
inline constexpr unsigned max_grid_c = 16;
/// Exponents d searched by classify, ascending.
std::vector<Rational> grid_exponents();

/// Labels the sequence: "constant" if all counts agree; "at-most-exponential"
/// if some c <= 16 bounds it by c^n and the successive ratios do not increase
/// over the second half; "sub-factorial (d<1)" for the least grid d (then
/// least c) with a c n^{dn} bound; otherwise "fast". Needs >= 3 entries.
GrowthReport classify(const OrbitCountSequence& seq, const std::vector<std::pair<BigInt, Rational>>& check = {});

}  // namespace orbitforge::growth
