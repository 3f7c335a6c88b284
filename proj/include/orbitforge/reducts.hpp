#pragma once

#include <string>
#include <vector>

#include "orbitforge/caps.hpp"
#include "orbitforge/structures.hpp"

// Reducts of unary structures and covering reducts of trivial covers, up to
// equality of the automorphism group.
namespace orbitforge {

/// Every (class partition, action) pair over u. Partitions come in
/// restricted-growth order over the orbits; within a partition, actions in
/// subgroups_above order. A finite orbit of size > 1 must share a class with
/// an infinite orbit. Throws CapExceeded past caps.orbit_cap orbits.
std::vector<ReductOfUnary> enumerate_unary_reducts(const UnaryStructure& u, const Caps& caps = {});
BigInt count_unary_reducts(const UnaryStructure& u, const Caps& caps = {});

/// Every (H, N_1..N_k) with H <= prod Sym(F_i), N_i normal in H_i and
/// prod N_i <= H, ordered by H and then by the N_i. Over a singleton orbit
/// N_i is the slice of H on that fiber, since the choice of N_i there does
/// not change the group.
std::vector<CoveringReduct> enumerate_covering_reducts(const FiberedStructure& c, const Caps& caps = {});
BigInt count_covering_reducts(const FiberedStructure& c, const Caps& caps = {});

/// The action of a kernel element on one fiber.
struct FiberAction {
  std::string orbit;
  std::size_t base_index = 0;
  Perm perm;  // on the labels of that orbit's fiber
};

/// Whether the fiber actions extend to an element of N(H, N_1..N_k).
/// Requires at least one fiber per orbit; fibers not listed are free.
bool kernel_membership(const CoveringReduct& r, const std::vector<FiberAction>& assignment);

/// Aut(smaller) <= Aut(larger), for descriptions over the same base.
bool group_contains(const ReductOfUnary& larger, const ReductOfUnary& smaller);
bool group_contains(const CoveringReduct& larger, const CoveringReduct& smaller);

/// The structure viewed as its own (trivial) reduct. Unary structures with a
/// finite orbit of size > 1 have no such form and are rejected.
ReductOfUnary as_reduct(const UnaryStructure& u);
CoveringReduct as_covering_reduct(const FiberedStructure& c);

/// Reducts of s among the enumerated ones: all of them for unary structures
/// and covers, the ones containing s for reducts and covering reducts.
std::vector<StructureDescription> reducts_of(const StructureDescription& s, const Caps& caps = {});

}  // namespace orbitforge
