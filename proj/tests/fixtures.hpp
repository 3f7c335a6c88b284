#pragma once

#include <string>
#include <vector>

#include "orbitforge/structures.hpp"

namespace fixtures {

using namespace orbitforge;

// Orbit sizes with 0 meaning infinite; orbits are named O1, O2, ...
inline UnaryStructure unary(const std::vector<std::uint64_t>& sizes) {
  UnaryStructure u;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    u.orbits.push_back({"O" + std::to_string(i + 1), sizes[i] ? Cardinal::finite(sizes[i]) : Cardinal::infinite()});
  }
  return u;
}

// Labels a, b, c, ... over each orbit.
inline FiberedStructure fibered(const std::vector<std::uint64_t>& base, const std::vector<std::size_t>& fiber) {
  FiberedStructure c{unary(base), {}};
  for (auto f : fiber) {
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < f; ++x) labels.push_back(std::string(1, static_cast<char>('a' + x)));
    c.fibers.push_back(labels);
  }
  return c;
}

inline CoveringReduct covering(const FiberedStructure& c, std::vector<Perm> h_gens, std::vector<PermGroup> n_groups) {
  return {c, PermGroup(c.label_count(), std::move(h_gens)), std::move(n_groups)};
}

inline ReductOfUnary swap_reduct() {
  return {unary({0, 0}), {{{"O1"}, {"O2"}}}, PermGroup::symmetric(2)};
}

// One orbit, fiber of size 2, H = S2 and N = `n`.
inline CoveringReduct flip_cover(bool full_kernel) {
  const auto s2 = PermGroup::symmetric(2);
  return covering(fibered({0}, {2}), s2.generators(), {full_kernel ? s2 : PermGroup::trivial(2)});
}

// The six structures every module is checked on.
inline std::vector<std::pair<std::string, StructureDescription>> matrix() {
  return {
      {"[inf]", unary({0})},
      {"[inf,inf] swap", swap_reduct()},
      {"[inf,1]", unary({0, 1})},
      {"fibers [2]", fibered({0}, {2})},
      {"fibers [2] H=S2 N=1", flip_cover(false)},
      {"fibers [2] H=N=S2", flip_cover(true)},
  };
}

}  // namespace fixtures
