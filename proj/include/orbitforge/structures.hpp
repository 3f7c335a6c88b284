#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orbitforge/permgroup.hpp"

// Finite descriptions of structures whose automorphism groups are built from
// symmetric groups on orbits: unary structures, their reducts, trivial covers
// with labelled fibers, and covering reducts of those covers.
namespace orbitforge {

/// A positive integer or countably infinite.
class Cardinal {
 public:
  static Cardinal finite(std::uint64_t size);
  static Cardinal infinite() { return Cardinal(); }

  bool is_infinite() const { return size_ == 0; }
  bool is_finite() const { return size_ != 0; }
  /// Only meaningful for finite cardinals.
  std::uint64_t size() const { return size_; }
  std::string str() const;

  friend bool operator==(const Cardinal&, const Cardinal&) = default;

 private:
  Cardinal() = default;
  std::uint64_t size_ = 0;  // 0 encodes infinity
};

struct Orbit {
  std::string name;
  Cardinal size;

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

struct UnaryStructure {
  std::vector<Orbit> orbits;

  /// Index of the orbit called `name`; throws ValidationError if absent.
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const UnaryStructure&, const UnaryStructure&) = default;
};

/// Orbits grouped into classes; each class lists orbit names.
struct ClassPartition {
  std::vector<std::vector<std::string>> classes;

  friend bool operator==(const ClassPartition&, const ClassPartition&) = default;
};

/// Automorphism group prod Sym(C_i) extended by `action`, a group of
/// permutations of the class indices.
struct ReductOfUnary {
  UnaryStructure base;
  ClassPartition nabla;
  PermGroup action;

  friend bool operator==(const ReductOfUnary&, const ReductOfUnary&) = default;
};

/// Strongly trivial cover: the domain is the disjoint union of F_i x O_i,
/// with automorphisms permuting base points and keeping labels.
struct FiberedStructure {
  UnaryStructure base;
  std::vector<std::vector<std::string>> fibers;  // labels, one list per orbit

  std::size_t fiber_size(std::size_t orbit) const { return fibers[orbit].size(); }
  /// Offset of orbit i's labels in the disjoint union of the label sets.
  std::size_t label_offset(std::size_t orbit) const;
  std::size_t label_count() const;

  friend bool operator==(const FiberedStructure&, const FiberedStructure&) = default;
};

/// Covering reduct with kernel N(H, N_1, ..., N_k). `h_group` acts on the
/// disjoint union of the label sets and preserves each orbit's segment;
/// `n_groups[i]` acts on the labels of orbit i.
struct CoveringReduct {
  FiberedStructure cover;
  PermGroup h_group;
  std::vector<PermGroup> n_groups;

  /// H_i: the restriction of H to orbit i's labels.
  PermGroup projection(std::size_t orbit) const;

  friend bool operator==(const CoveringReduct&, const CoveringReduct&) = default;
};

using StructureDescription = std::variant<UnaryStructure, ReductOfUnary, FiberedStructure, CoveringReduct>;

const UnaryStructure& base_of(const StructureDescription& s);
/// Orbit names of the base, in order.
std::vector<std::string> orbit_names(const UnaryStructure& u);

/// An equivalence relation on the (infinite) domain, described per orbit.
struct SymbolicPartition {
  enum class Kind { equality, fibers, classes };
  Kind kind = Kind::equality;
  // classes: each entry is one block, the union of every point over the
  //   listed orbits; points of unlisted orbits are singleton blocks.
  // equality, fibers: each entry is one extra block gathering every point
  //   over the listed orbits; other points follow `kind`.
  std::vector<std::vector<std::string>> blocks;

  std::string str() const;

  friend bool operator==(const SymbolicPartition&, const SymbolicPartition&) = default;
};

/// Violation messages; empty iff `s` is well formed.
std::vector<std::string> validate(const StructureDescription& s);
/// Throws ValidationError with the first violation.
void require_valid(const StructureDescription& s);

/// Finest congruence with finitely many classes.
SymbolicPartition nabla(const StructureDescription& s);
/// Coarsest congruence with finite classes.
SymbolicPartition delta(const StructureDescription& s);

struct SkmParameters {
  unsigned k = 1;  // largest delta class
  unsigned m = 1;  // nabla classes of the quotient by delta
};
SkmParameters skm_parameters(const StructureDescription& s);

/// Number of nabla classes of s itself.
std::size_t nabla_class_count(const StructureDescription& s);

/// Replaces every finite orbit (every singleton class, for reducts) by an
/// infinite one. Other kinds are rejected with ValidationError.
StructureDescription split_finite_orbits(const StructureDescription& s);

struct PointLabel {
  std::string orbit;
  std::string fiber_label;  // empty for unary structures and their reducts
  std::size_t base_index = 0;

  friend bool operator==(const PointLabel&, const PointLabel&) = default;
};

/// Finite realization on finitely many base points per orbit. Points are
/// laid out orbit by orbit, then base point by base point, then label.
struct Truncation {
  PermGroup group;
  std::vector<PointLabel> point_labels;
  std::vector<std::size_t> base_sizes;  // per orbit
};

/// `base_sizes` has one entry per orbit; finite orbits must get exactly
/// their size. For reducts, classes in one orbit of the action must receive
/// equal totals.
Truncation truncate(const StructureDescription& s, std::span<const std::size_t> base_sizes);

/// The partition restricted to the points of a truncation of s.
DomainPartition restrict_to(const SymbolicPartition& p, const StructureDescription& s, const Truncation& t);

/// The truncated base group prod Sym(base points of O_i) acting on base
/// points, and the induced action of a truncation element on base points.
/// Both use the base-point layout: orbit by orbit, then base index.
PermGroup truncated_base_group(const Truncation& t);
/// Throws ValidationError if g does not map fibers to fibers.
Perm induced_base_action(const StructureDescription& s, const Truncation& t, const Perm& g);

}  // namespace orbitforge
