#include "orbitforge/growth.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "orbitforge/errors.hpp"

namespace orbitforge::growth {

namespace {

using Float = boost::multiprecision::cpp_bin_float_50;

constexpr std::int64_t scale = 1'000'000;

bool below_ndn(const BigInt& count, const BigInt& c, const Rational& d, unsigned n) {
  if (n <= 1) return count <= c;
  const auto a = static_cast<std::uint64_t>(d.num()), b = static_cast<std::uint64_t>(d.den());
  return pow(count, b) <= pow(c, b) * pow(BigInt(n), a * n);
}

ExponentEstimate estimate(unsigned n, const BigInt& count) {
  const Float value = boost::multiprecision::log(Float(count)) / (Float(n) * boost::multiprecision::log(Float(n)));
  // 50 digits leave a wide margin below the 1e-6 grid; widen by one step.
  const Float scaled = value * scale;
  const auto lo = static_cast<std::int64_t>(boost::multiprecision::floor(scaled)) - 1;
  const auto hi = static_cast<std::int64_t>(boost::multiprecision::ceil(scaled)) + 1;
  return {n, Rational(std::max<std::int64_t>(lo, 0), scale), Rational(hi, scale)};
}

}  // namespace

bool verify_exp_bound(const OrbitCountSequence& seq, const BigInt& c) {
  if (seq.entries.empty()) throw ValidationError("sequence is empty");
  for (const auto& e : seq.entries) {
    if (e.count > pow(c, e.n)) return false;
  }
  return true;
}

bool verify_ndn_bound(const OrbitCountSequence& seq, const BigInt& c, const Rational& d) {
  if (seq.entries.empty()) throw ValidationError("sequence is empty");
  if (!(Rational(0) < d && d < Rational(1))) throw ValidationError("exponent d must satisfy 0 < d < 1");
  for (const auto& e : seq.entries) {
    if (!below_ndn(e.count, c, d, e.n)) return false;
  }
  return true;
}

std::vector<Rational> grid_exponents() {
  return {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4),
          Rational(4, 5), Rational(5, 6), Rational(7, 8), Rational(9, 10)};
}

GrowthReport classify(const OrbitCountSequence& seq, const std::vector<std::pair<BigInt, Rational>>& check) {
  if (seq.entries.size() < 3) throw ValidationError("classify needs at least 3 entries");
  GrowthReport report;
  for (const auto& e : seq.entries) {
    if (e.n >= 2 && e.count > 0) report.exponents.push_back(estimate(e.n, e.count));
  }
  for (const auto& [c, d] : check) report.verdicts.push_back({c, d, verify_ndn_bound(seq, c, d)});

  const auto& entries = seq.entries;
  bool constant = true;
  for (const auto& e : entries) constant = constant && e.count == entries.front().count;
  if (constant) {
    report.label = "constant";
    return report;
  }

  for (unsigned c = 1; c <= max_grid_c && !report.exp_witness; ++c) {
    if (verify_exp_bound(seq, c)) report.exp_witness = BigInt(c);
  }
  // Ratios count[i]/count[i-1] must not increase over the second half.
  bool ratios_settle = true;
  for (std::size_t i = entries.size() / 2 + 1; i + 1 < entries.size(); ++i) {
    const BigInt &a = entries[i - 1].count, &b = entries[i].count, &c = entries[i + 1].count;
    if (a == 0 || b == 0) continue;
    ratios_settle = ratios_settle && c * a <= b * b;
  }
  if (report.exp_witness && ratios_settle) {
    report.label = "at-most-exponential";
    return report;
  }

  for (const auto& d : grid_exponents()) {
    for (unsigned c = 1; c <= max_grid_c; ++c) {
      if (verify_ndn_bound(seq, c, d)) {
        report.ndn_witness = NdnBound{c, d, true};
        report.label = "sub-factorial (d<1)";
        return report;
      }
    }
  }
  report.label = "fast";
  return report;
}

}  // namespace orbitforge::growth
