#include "doctest.h"
#include "fixtures.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/orbits.hpp"
#include "orbitforge/partitions.hpp"
#include "orbitforge/reducts.hpp"

using namespace orbitforge;
using fixtures::fibered;
using fixtures::unary;

namespace {

std::vector<BigInt> counts(const OrbitCountSequence& seq) {
  std::vector<BigInt> out;
  for (const auto& e : seq.entries) out.push_back(e.count);
  return out;
}

// Injective orbits of the trivial cover with fiber size 2 over one infinite
// orbit: choose which positions pair up in a fiber, then labels.
BigInt trivial_cover_formula(unsigned n) {
  BigInt total = 0;
  for (unsigned pairs = 0; 2 * pairs <= n; ++pairs) {
    BigInt matchings = 1;
    for (unsigned x = 1; x < 2 * pairs; x += 2) matchings *= x;
    total += binomial(n, 2 * pairs) * matchings * pow(BigInt(2), n - pairs);
  }
  return total;
}

}  // namespace

TEST_CASE("symbolic counts: examples") {
  for (unsigned n = 1; n <= 8; ++n) CHECK(count_injective_orbits(unary({0}), n) == 1);
  CHECK(count_injective_orbits(fixtures::swap_reduct(), 3) == 4);
  CHECK(count_injective_orbits(fibered({0}, {2}), 2) == 6);
  CHECK(count_injective_orbits(fixtures::flip_cover(false), 2) == 3);
  for (unsigned n = 1; n <= 8; ++n) {
    CHECK(count_injective_orbits(fixtures::flip_cover(true), n) == partitions::bounded_block_partitions(2, n));
    CHECK(count_injective_orbits(fixtures::swap_reduct(), n) == pow(BigInt(2), n - 1));
    CHECK(count_injective_orbits(unary({0, 1}), n) == n + 1);
    CHECK(count_injective_orbits(fibered({0}, {2}), n) == trivial_cover_formula(n));
  }
  CHECK(trivial_cover_formula(8) == 32400);
  CHECK(count_orbits(unary({0}), 3) == 5);
  CHECK(count_orbits(unary({0}), 1) == 1);
  CHECK(count_orbits(fibered({0}, {2}), 2) == 8);
  Caps small;
  small.count_cap = 3;
  CHECK_THROWS_AS(count_injective_orbits(unary({0}), 4, small), CapExceeded);
  CHECK_THROWS_AS(count_injective_orbits(unary({}), 1), ValidationError);
}

TEST_CASE("sequences") {
  CHECK(counts(orbit_sequence(unary({0}), 4, OrbitKind::injective)) == std::vector<BigInt>{1, 1, 1, 1});
  CHECK(counts(orbit_sequence(fixtures::flip_cover(true), 5, OrbitKind::injective)) ==
        std::vector<BigInt>{1, 2, 4, 10, 26});
  CHECK(counts(orbit_sequence(fixtures::swap_reduct(), 3, OrbitKind::injective)) == std::vector<BigInt>{1, 2, 4});
  CHECK(counts(orbit_sequence(unary({0}), 4, OrbitKind::all)) == std::vector<BigInt>{1, 2, 5, 15});
}

TEST_CASE("truncation sizes") {
  CHECK(truncation_sizes(unary({0, 1}), 3) == std::vector<std::size_t>{6, 1});
  CHECK(truncation_sizes(unary({0, 1}), 3, 2) == std::vector<std::size_t>{8, 1});
  // Classes: {O1, O2 (size 3)} and {O3}, swapped; totals must match.
  ReductOfUnary r{unary({0, 3, 0}), {{{"O1", "O2"}, {"O3"}}}, PermGroup::symmetric(2)};
  REQUIRE(validate(r).empty());
  const auto sizes = truncation_sizes(r, 2);
  CHECK(sizes[0] + sizes[1] == sizes[2]);
  CHECK(sizes[0] >= 4);
  ReductOfUnary merged{unary({0, 0}), {{{"O1", "O2"}}}, PermGroup::trivial(1)};
  const auto split = truncation_sizes(merged, 2);
  CHECK(split[0] + split[1] == 4);
}

TEST_CASE("crosscheck: matrix") {
  for (const auto& [name, s] : fixtures::matrix()) {
    for (unsigned n = 1; n <= 3; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto report = crosscheck(s, n, 1);
      CHECK(report.stabilized());
      CHECK(report.agrees());
    }
  }
}

TEST_CASE("crosscheck: structures beyond the matrix") {
  const auto s2 = PermGroup::symmetric(2);
  const auto s3 = PermGroup::symmetric(3);
  std::vector<std::pair<std::string, StructureDescription>> extra = {
      {"[inf,inf,1]", unary({0, 0, 1})},
      {"[inf,3]", unary({0, 3})},
      {"one class {inf, 3}", ReductOfUnary{unary({0, 3}), {{{"O1", "O2"}}}, PermGroup::trivial(1)}},
      {"[inf,inf,1,1] double swap", ReductOfUnary{unary({0, 0, 1, 1}), {{{"O1"}, {"O2"}, {"O3"}, {"O4"}}},
                                                  PermGroup(4, {Perm::from_cycles(4, {{0, 1}, {2, 3}})})}},
      {"fibers [3] H=S3 N=A3", fixtures::covering(fibered({0}, {3}), s3.generators(), {PermGroup::cyclic(3)})},
      {"fibers [2,2] diagonal",
       fixtures::covering(fibered({0, 0}, {2, 2}), {Perm::from_cycles(4, {{0, 1}, {2, 3}})},
                          {PermGroup::trivial(2), PermGroup::trivial(2)})},
      {"fibers [2,2] over [inf,1] H=N=S2xS2",
       fixtures::covering(fibered({0, 1}, {2, 2}),
                          {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})}, {s2, s2})},
      {"fibers [2,2] over [inf,1] diagonal",
       fixtures::covering(fibered({0, 1}, {2, 2}), {Perm::from_cycles(4, {{0, 1}, {2, 3}})},
                          {PermGroup::trivial(2), PermGroup::trivial(2)})},
      {"fibers [2,3] over [1,1]", fibered({1, 1}, {2, 3})},
  };
  for (const auto& [name, s] : extra) {
    REQUIRE(validate(s).empty());
    for (unsigned n = 1; n <= 3; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto report = crosscheck(s, n, 1);
      CHECK(report.stabilized());
      CHECK(report.symbolic == report.small_count);
    }
  }
}

TEST_CASE("every covering reduct of a small cover matches its truncation") {
  for (const auto& c : {fibered({0}, {3}), fibered({0, 1}, {2, 2}), fibered({0, 0}, {2, 1})}) {
    for (const auto& r : enumerate_covering_reducts(c)) {
      for (unsigned n = 1; n <= 2; ++n) {
        const auto sizes = truncation_sizes(r, n);
        CHECK(count_injective_orbits(r, n) == count_injective_orbits_truncated(r, n, sizes));
      }
    }
  }
}

TEST_CASE("reduct monotonicity") {
  for (const auto& [name, s] : fixtures::matrix()) {
    for (const auto& r : reducts_of(s)) {
      for (unsigned n = 1; n <= 5; ++n) {
        CAPTURE(name);
        CHECK(count_injective_orbits(r, n) <= count_injective_orbits(s, n));
      }
    }
  }
}

TEST_CASE("growth bound for one-orbit covers") {
  // m^n p_k(n), with m the number of point orbits of the trivial cover
  // underneath, read off a truncation.
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto cover = fibered({0}, {k});
    const std::size_t sizes[] = {2};
    const auto m = point_orbits(truncate(cover, sizes).group).size();
    CHECK(m == k);
    for (const auto& r : enumerate_covering_reducts(cover)) {
      for (unsigned n = 1; n <= 8; ++n) {
        CHECK(count_injective_orbits(r, n) <= pow(BigInt(m), n) * partitions::bounded_block_partitions(k, n));
      }
    }
  }
}

TEST_CASE("stirling decomposition against the truncation") {
  for (const auto& [name, s] : fixtures::matrix()) {
    for (unsigned n = 1; n <= 3; ++n) {
      const auto t = truncate(s, truncation_sizes(s, n));
      CAPTURE(name);
      CHECK(count_orbits(s, n) == orbit_count_tuples(t.group, n));
    }
  }
}
