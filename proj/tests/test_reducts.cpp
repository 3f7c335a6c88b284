#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/reducts.hpp"

using namespace orbitforge;
using fixtures::fibered;
using fixtures::unary;

namespace {

// Materialized containment of truncated groups at equal sizes.
bool truncation_contains(const StructureDescription& larger, const StructureDescription& smaller,
                         std::span<const std::size_t> sizes) {
  const auto big = truncate(larger, sizes);
  const auto small = truncate(smaller, sizes);
  return std::all_of(small.group.generators().begin(), small.group.generators().end(),
                     [&](const Perm& g) { return contains(big.group, g); });
}

}  // namespace

TEST_CASE("unary reducts: counts") {
  CHECK(count_unary_reducts(unary({0})) == 1);
  CHECK(count_unary_reducts(unary({0, 0})) == 3);
  CHECK(count_unary_reducts(unary({0, 1})) == 2);
  CHECK(count_unary_reducts(unary({0, 0, 0})) == 13);
  CHECK(count_unary_reducts(unary({1})) == 1);
  // A three-point orbit must join the infinite one.
  CHECK(count_unary_reducts(unary({0, 3})) == 1);
  CHECK_THROWS_AS(count_unary_reducts(unary({3})), Unsupported);
  Caps small;
  small.orbit_cap = 2;
  CHECK_THROWS_AS(count_unary_reducts(unary({0, 0, 0}), small), CapExceeded);
}

TEST_CASE("unary reducts: [inf,inf] matches the Sym(6) oracle") {
  const auto reducts = enumerate_unary_reducts(unary({0, 0}));
  REQUIRE(reducts.size() == 3);
  const PermGroup s3s3[] = {PermGroup::symmetric(3), PermGroup::symmetric(3)};
  const auto oracle = subgroups_above(direct_product(s3s3), PermGroup::symmetric(6));
  CHECK(oracle.size() == reducts.size());
  // Same groups at truncation size 3 per orbit.
  const std::size_t sizes[] = {3, 3};
  std::vector<BigInt> orders;
  for (const auto& r : reducts) orders.push_back(order(truncate(r, sizes).group));
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<BigInt>{36, 72, 720});
}

TEST_CASE("unary reducts: well formed, distinct, and above the structure") {
  for (const auto& sizes : std::vector<std::vector<std::uint64_t>>{{0}, {0, 1}, {0, 0}, {0, 0, 1}, {0, 0, 0}, {0, 1, 1}}) {
    const auto u = unary(sizes);
    const auto reducts = enumerate_unary_reducts(u);
    const auto self = as_reduct(u);
    CHECK(std::count(reducts.begin(), reducts.end(), self) == 1);
    for (std::size_t i = 0; i < reducts.size(); ++i) {
      CHECK(validate(reducts[i]).empty());
      CHECK(group_contains(reducts[i], self));
      CHECK(group_contains(reducts[i], reducts[i]));
      for (std::size_t j = 0; j < reducts.size(); ++j) {
        if (i != j) CHECK_FALSE((group_contains(reducts[i], reducts[j]) && group_contains(reducts[j], reducts[i])));
      }
    }
  }
}

TEST_CASE("unary reducts: containment agrees with truncation") {
  const auto reducts = enumerate_unary_reducts(unary({0, 0, 0}));
  // Equal class sizes make every truncation well defined.
  const std::size_t sizes[] = {2, 2, 2};
  for (const auto& a : reducts) {
    for (const auto& b : reducts) {
      const bool symbolic = group_contains(a, b);
      bool truncated = true;
      try {
        truncated = truncation_contains(a, b, sizes);
      } catch (const ValidationError&) {
        continue;  // unequal class totals under an action
      }
      CHECK(symbolic == truncated);
    }
  }
}

TEST_CASE("covering reducts: counts") {
  CHECK(count_covering_reducts(fibered({0}, {1})) == 1);
  CHECK(count_covering_reducts(fibered({0}, {2})) == 3);
  CHECK(count_covering_reducts(fibered({0}, {3})) == 12);
  CHECK(count_covering_reducts(fibered({0, 0}, {2, 2})) == 10);
  CHECK(count_covering_reducts(fibered({0, 1}, {1, 1})) == 1);
  Caps small;
  small.fiber_sum_cap = 3;
  CHECK_THROWS_AS(count_covering_reducts(fibered({0}, {4}), small), CapExceeded);
  small = Caps{};
  small.cover_order_cap = 3;
  CHECK_THROWS_AS(count_covering_reducts(fibered({0, 0}, {2, 2}), small), CapExceeded);
}

TEST_CASE("covering reducts: one orbit matches the normal subgroup count") {
  for (std::size_t f = 1; f <= 4; ++f) {
    std::size_t expected = 0;
    for (const auto& h : all_subgroups(PermGroup::symmetric(f))) expected += normal_subgroups(h.group).size();
    CHECK(count_covering_reducts(fibered({0}, {f})) == expected);
  }
}

TEST_CASE("covering reducts: well formed and pairwise distinct") {
  for (const auto& c : {fibered({0}, {2}), fibered({0}, {3}), fibered({0, 0}, {2, 2}), fibered({0, 1}, {2, 2})}) {
    const auto reducts = enumerate_covering_reducts(c);
    const auto self = as_covering_reduct(c);
    for (std::size_t i = 0; i < reducts.size(); ++i) {
      CHECK(validate(reducts[i]).empty());
      CHECK(group_contains(reducts[i], self));
      for (std::size_t j = i + 1; j < reducts.size(); ++j) {
        CHECK_FALSE((group_contains(reducts[i], reducts[j]) && group_contains(reducts[j], reducts[i])));
      }
    }
  }
}

TEST_CASE("covering reducts: distinct reducts are told apart by kernel queries") {
  // For one orbit with fiber F: the global action (h on fiber 0 and 1)
  // and the split action (nu on fiber 0 only) separate all (H, N).
  const auto c = fibered({0}, {3});
  const auto reducts = enumerate_covering_reducts(c);
  const auto s3 = elements(PermGroup::symmetric(3));
  auto signature = [&](const CoveringReduct& r) {
    std::vector<bool> bits;
    for (const auto& x : s3) {
      bits.push_back(kernel_membership(r, {{"O1", 0, x}, {"O1", 1, x}}));
      bits.push_back(kernel_membership(r, {{"O1", 0, x}, {"O1", 1, Perm::identity(3)}}));
    }
    return bits;
  };
  for (std::size_t i = 0; i < reducts.size(); ++i) {
    for (std::size_t j = i + 1; j < reducts.size(); ++j) CHECK(signature(reducts[i]) != signature(reducts[j]));
  }
}

TEST_CASE("kernel membership") {
  const Perm id = Perm::identity(2);
  const Perm flip = Perm::from_cycles(2, {{0, 1}});
  const auto h_only = fixtures::flip_cover(false);
  const auto wreath = fixtures::flip_cover(true);
  CHECK(kernel_membership(h_only, {{"O1", 0, id}, {"O1", 1, id}}));
  CHECK_FALSE(kernel_membership(h_only, {{"O1", 0, flip}, {"O1", 1, id}}));
  CHECK(kernel_membership(h_only, {{"O1", 0, flip}, {"O1", 1, flip}}));
  CHECK(kernel_membership(wreath, {{"O1", 0, flip}, {"O1", 1, id}}));
  CHECK_FALSE(kernel_membership(fixtures::covering(fibered({0}, {2}), {}, {PermGroup::trivial(2)}), {{"O1", 3, flip}}));
  CHECK_THROWS_AS(kernel_membership(wreath, {{"O9", 0, id}}), ValidationError);
  CHECK_THROWS_AS(kernel_membership(wreath, {}), ValidationError);

  // Two orbits with a diagonal H: flips must happen together.
  const auto diag = fixtures::covering(fibered({0, 0}, {2, 2}), {Perm::from_cycles(4, {{0, 1}, {2, 3}})},
                                       {PermGroup::trivial(2), PermGroup::trivial(2)});
  CHECK(kernel_membership(diag, {{"O1", 0, flip}, {"O2", 5, flip}}));
  CHECK_FALSE(kernel_membership(diag, {{"O1", 0, flip}, {"O2", 5, id}}));
}

TEST_CASE("covering containment agrees with truncation") {
  const auto c = fibered({0, 0}, {2, 2});
  const auto reducts = enumerate_covering_reducts(c);
  const std::size_t sizes[] = {2, 2};
  for (const auto& a : reducts) {
    for (const auto& b : reducts) CHECK(group_contains(a, b) == truncation_contains(a, b, sizes));
  }
}

TEST_CASE("reducts of a reduct") {
  const auto above_swap = reducts_of(fixtures::swap_reduct());
  CHECK(above_swap.size() == 2);
  CHECK(reducts_of(unary({0, 0})).size() == 3);
  CHECK(reducts_of(fixtures::flip_cover(false)).size() == 2);
  CHECK(reducts_of(fixtures::flip_cover(true)).size() == 1);
  CHECK(reducts_of(fibered({0}, {2})).size() == 3);
}
