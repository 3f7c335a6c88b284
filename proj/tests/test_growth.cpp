#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/growth.hpp"
#include "orbitforge/partitions.hpp"

using namespace orbitforge;
using namespace orbitforge::growth;

namespace {

template <typename F>
OrbitCountSequence sequence(unsigned n_max, F&& f) {
  OrbitCountSequence seq;
  for (unsigned n = 1; n <= n_max; ++n) seq.entries.push_back({n, f(n)});
  return seq;
}

OrbitCountSequence p2(unsigned n_max) {
  return sequence(n_max, [](unsigned n) { return partitions::bounded_block_partitions(2, n); });
}

OrbitCountSequence ones(unsigned n_max) {
  return sequence(n_max, [](unsigned) { return BigInt(1); });
}

}  // namespace

TEST_CASE("exponential bound") {
  CHECK(verify_exp_bound(ones(8), 1));
  CHECK_FALSE(verify_exp_bound(p2(10), 2));
  CHECK(partitions::bounded_block_partitions(2, 10) > 1024);
  CHECK(verify_exp_bound(sequence(10, [](unsigned n) -> BigInt { return pow(BigInt(2), n - 1); }), 2));
  CHECK_THROWS_AS(verify_exp_bound(OrbitCountSequence{}, 2), ValidationError);
}

TEST_CASE("n^{dn} bound") {
  CHECK(verify_ndn_bound(ones(8), 1, Rational(1, 2)));
  CHECK(verify_ndn_bound(p2(12), 4, Rational(3, 4)));
  CHECK_FALSE(verify_ndn_bound(p2(64), 4, Rational(1, 4)));
  CHECK_THROWS_AS(verify_ndn_bound(ones(3), 1, Rational(1)), ValidationError);
  CHECK_THROWS_AS(verify_ndn_bound(ones(3), 1, Rational(0)), ValidationError);
}

TEST_CASE("n^{dn} bound is monotone in c and d") {
  const auto seq = p2(16);
  const auto grid = grid_exponents();
  for (unsigned c = 1; c <= 8; ++c) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!verify_ndn_bound(seq, c, grid[i])) continue;
      for (std::size_t j = i; j < grid.size(); ++j) {
        CHECK(verify_ndn_bound(seq, c, grid[j]));
        CHECK(verify_ndn_bound(seq, c + 1, grid[j]));
      }
    }
  }
}

TEST_CASE("classify: examples") {
  CHECK(classify(ones(5)).label == "constant");

  const auto p = classify(p2(12), {{4, Rational(3, 4)}});
  CHECK(p.label == "sub-factorial (d<1)");
  REQUIRE(p.verdicts.size() == 1);
  CHECK(p.verdicts[0].holds);
  REQUIRE(p.ndn_witness);
  CHECK(verify_ndn_bound(p2(12), p.ndn_witness->c, p.ndn_witness->d));

  CHECK(classify(sequence(8, [](unsigned n) -> BigInt { return pow(BigInt(2), n - 1); })).label == "at-most-exponential");
  CHECK(classify(sequence(8, [](unsigned n) { return BigInt(n + 1); })).label == "at-most-exponential");
  // n^n outgrows 16 n^{9n/10} once n^{n/10} > 16, at n = 12.
  CHECK(classify(sequence(12, [](unsigned n) -> BigInt { return pow(BigInt(n), n); })).label == "fast");
  CHECK(classify(sequence(11, [](unsigned n) -> BigInt { return pow(BigInt(n), n); })).label != "fast");
  CHECK_THROWS_AS(classify(ones(2)), ValidationError);
}

TEST_CASE("classify: Bell numbers up to 12") {
  const auto bell = sequence(12, [](unsigned n) { return partitions::bell_number(n); });
  // Bell(n) <= 2 n^{n/2} still holds for n <= 12, so the grid finds a witness.
  CHECK(verify_ndn_bound(bell, 2, Rational(1, 2)));
  const auto report = classify(bell);
  CHECK(report.label == "sub-factorial (d<1)");
}

TEST_CASE("exponent estimates enclose the true value") {
  const auto seq = p2(20);
  const auto report = classify(seq);
  CHECK(report.exponents.size() == 19);
  for (const auto& e : report.exponents) {
    const double value = std::log(partitions::bounded_block_partitions(2, e.n).convert_to<double>()) /
                         (e.n * std::log(static_cast<double>(e.n)));
    CHECK(static_cast<double>(e.lower.num()) / e.lower.den() <= value);
    CHECK(value <= static_cast<double>(e.upper.num()) / e.upper.den());
    CHECK(e.upper - e.lower <= Rational(3, 1'000'000));
  }
}

TEST_CASE("matrix sequences fit the membership witness") {
  for (const auto& [name, s] : fixtures::matrix()) {
    const auto seq = orbit_sequence(s, 8, OrbitKind::injective);
    const auto k = skm_parameters(s).k;
    const Rational d = Rational(k - 1, k) + Rational(1, 4 * k);
    bool found = false;
    for (unsigned c = 1; c <= 8 && !found; ++c) found = verify_ndn_bound(seq, c, d);
    CAPTURE(name);
    CHECK(found);
    CHECK(classify(seq).label != "fast");
    if (std::holds_alternative<ReductOfUnary>(s) || std::holds_alternative<UnaryStructure>(s)) {
      CHECK(verify_exp_bound(seq, nabla_class_count(s)));
    }
  }
}
