#pragma once

#include <optional>
#include <span>
#include <vector>

#include "orbitforge/numeric.hpp"
#include "orbitforge/perm.hpp"

namespace orbitforge {

/// Base and strong generating set for a permutation group, built by the
/// deterministic Schreier-Sims algorithm. Used where a group is far too large
/// to list (truncations of infinite structures) but its order, membership
/// and point stabilizers are still needed.
class StabilizerChain {
 public:
  /// `base_prefix` fixes the first base points, in order; the chain extends
  /// it as needed. Levels are kept for prefix points even when every
  /// generator fixes them.
  StabilizerChain(std::size_t degree, std::span<const Perm> generators,
                  std::span<const Point> base_prefix = {});

  std::size_t degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }
  std::vector<Point> base() const;

  BigInt order() const;
  bool contains(const Perm& g) const;

  /// Generators of the pointwise stabilizer of base()[0..level).
  const std::vector<Perm>& stabilizer_generators(std::size_t level) const;

  /// Orbit of base()[level] under stabilizer_generators(level).
  const std::vector<Point>& basic_orbit(std::size_t level) const { return levels_[level].orbit; }

 private:
  struct Level {
    Point point = 0;
    std::vector<Perm> generators;
    std::vector<Point> orbit;
    std::vector<std::optional<Perm>> transversal;  // indexed by point
  };

  void rebuild_orbit(Level& level) const;
  // Sifts g from `start`; returns the residue and the level where sifting
  // stopped (depth() if it passed every level).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t start) const;
  void append_level(Point point);

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<Perm> empty_;
};

}  // namespace orbitforge
