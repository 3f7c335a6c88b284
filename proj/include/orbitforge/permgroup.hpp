#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orbitforge/caps.hpp"
#include "orbitforge/numeric.hpp"
#include "orbitforge/perm.hpp"

namespace orbitforge {

/// A finite permutation group given by its degree and generators.
/// Immutable once constructed.
class PermGroup {
 public:
  PermGroup() = default;
  /// Throws ValidationError if a generator has the wrong degree.
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  static PermGroup trivial(std::size_t degree);
  static PermGroup symmetric(std::size_t degree);
  /// Generated by the full cycle (0 1 ... degree-1).
  static PermGroup cyclic(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  friend bool operator==(const PermGroup&, const PermGroup&) = default;

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
};

/// A group together with its full element list in canonical (sorted) order.
struct MaterializedGroup {
  PermGroup group;
  std::vector<Perm> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(const Perm& g) const;
};

/// Partition of the domain {0..d-1}; block ids are contiguous from 0 and
/// numbered by first occurrence.
struct DomainPartition {
  std::vector<std::uint32_t> block_of;

  std::size_t block_count() const;
  std::vector<std::vector<Point>> blocks() const;
  /// Renumbers block ids by first occurrence.
  static DomainPartition normalized(std::vector<std::uint32_t> labels);

  friend bool operator==(const DomainPartition&, const DomainPartition&) = default;
  friend auto operator<=>(const DomainPartition&, const DomainPartition&) = default;
};

/// Every element, sorted lexicographically by image array.
/// Throws CapExceeded once the closure grows past caps.order_cap.
std::vector<Perm> elements(const PermGroup& g, const Caps& caps = {});
MaterializedGroup materialize(const PermGroup& g, const Caps& caps = {});

/// Group order via a stabilizer chain; no cap applies.
BigInt order(const PermGroup& g);
bool contains(const PermGroup& g, const Perm& x);

/// Orbits of g on the points, each sorted, ordered by least point.
std::vector<std::vector<Point>> point_orbits(const PermGroup& g);

/// Orbits on injective n-tuples. Descends through point stabilizers of a
/// stabilizer chain; caps.work_cap bounds the number of descent nodes.
BigInt orbit_count_injective(const PermGroup& g, unsigned n, const Caps& caps = {});
/// Orbits on all n-tuples (repeats allowed).
BigInt orbit_count_tuples(const PermGroup& g, unsigned n, const Caps& caps = {});
/// Orbits on n-element subsets, by union-find over the subsets under the
/// generators; caps.work_cap bounds C(degree, n).
BigInt orbit_count_subsets(const PermGroup& g, unsigned n, const Caps& caps = {});

/// Union-find over every tuple of the domain under the generators. Slow
/// but independent of the stabilizer-chain route; caps.work_cap bounds
/// degree^n.
BigInt orbit_count_injective_exhaustive(const PermGroup& g, unsigned n, const Caps& caps = {});
BigInt orbit_count_tuples_exhaustive(const PermGroup& g, unsigned n, const Caps& caps = {});

PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> points);

bool preserves(const PermGroup& g, const DomainPartition& partition);
/// All g-invariant partitions of the domain, in restricted-growth order.
std::vector<DomainPartition> invariant_partitions(const PermGroup& g, const Caps& caps = {});

/// Every H with base <= H <= ambient, ordered by (order, element list).
/// Throws ValidationError if base is not contained in ambient and
/// CapExceeded if the index exceeds caps.index_cap.
std::vector<MaterializedGroup> subgroups_above(const PermGroup& base, const PermGroup& ambient,
                                               const Caps& caps = {});
/// Every subgroup of g, same order as subgroups_above.
std::vector<MaterializedGroup> all_subgroups(const PermGroup& g, const Caps& caps = {});
std::vector<MaterializedGroup> normal_subgroups(const PermGroup& g, const Caps& caps = {});

/// Intransitive direct product on the disjoint union of the domains.
PermGroup direct_product(std::span<const PermGroup> groups);

/// `fiber` acting on each of `blocks` copies of its domain, with `top`
/// permuting the copies. Point (block b, fiber point f) is b * |F| + f.
PermGroup imprimitive_wreath(const PermGroup& fiber, std::size_t blocks, const PermGroup& top);

}  // namespace orbitforge
