#pragma once

#include <vector>

#include "orbitforge/caps.hpp"
#include "orbitforge/numeric.hpp"
#include "orbitforge/structures.hpp"

namespace orbitforge {

struct SequenceEntry {
  unsigned n = 0;
  BigInt count;

  friend bool operator==(const SequenceEntry&, const SequenceEntry&) = default;
};

struct OrbitCountSequence {
  std::vector<SequenceEntry> entries;  // n strictly increasing

  friend bool operator==(const OrbitCountSequence&, const OrbitCountSequence&) = default;
};

enum class OrbitKind { injective, all };

/// Orbits of Aut(s) on injective n-tuples, computed from the description:
/// Burnside over the class action for reducts, and over H and the cosets of
/// the N_i for covers. Throws CapExceeded when n > caps.count_cap.
BigInt count_injective_orbits(const StructureDescription& s, unsigned n, const Caps& caps = {});
/// Orbits on all n-tuples, as sum_j S(n, j) times the injective count for j.
BigInt count_orbits(const StructureDescription& s, unsigned n, const Caps& caps = {});
OrbitCountSequence orbit_sequence(const StructureDescription& s, unsigned n_max, OrbitKind kind,
                                  const Caps& caps = {});

/// Truncation sizes that are large enough for n-tuples: 2n + extra base
/// points per infinite orbit (per class, spread over its infinite orbits,
/// for reducts), and the exact size for finite orbits.
std::vector<std::size_t> truncation_sizes(const StructureDescription& s, unsigned n, unsigned extra = 0);

/// Injective n-orbits of the truncation at the given sizes.
BigInt count_injective_orbits_truncated(const StructureDescription& s, unsigned n,
                                        std::span<const std::size_t> sizes, const Caps& caps = {});

struct CrosscheckReport {
  unsigned n = 0;
  BigInt symbolic;
  std::vector<std::size_t> small_sizes, large_sizes;
  BigInt small_count, large_count;

  bool stabilized() const { return small_count == large_count; }
  bool agrees() const { return stabilized() && symbolic == small_count; }
};

CrosscheckReport crosscheck(const StructureDescription& s, unsigned n, unsigned margin = 1, const Caps& caps = {});

}  // namespace orbitforge
