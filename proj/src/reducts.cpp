#include "orbitforge/reducts.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "orbitforge/errors.hpp"
#include "orbitforge/partitions.hpp"
#include "orbitforge/stabilizer_chain.hpp"

namespace orbitforge {

namespace {

// Drops generators that the others already generate.
PermGroup pruned(const PermGroup& g) {
  std::vector<Perm> gens = g.generators();
  std::erase_if(gens, [](const Perm& x) { return x.is_identity(); });
  const BigInt full = order(g);
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<Perm> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (StabilizerChain(g.degree(), rest).order() == full) gens = std::move(rest);
  }
  return PermGroup(g.degree(), std::move(gens));
}

// Symmetric group on the listed points of a degree-d domain.
void add_symmetric_on(std::vector<Perm>& gens, std::size_t degree, const std::vector<Point>& points) {
  if (points.size() < 2) return;
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::swap(images[points[0]], images[points[1]]);
  gens.emplace_back(images);
  if (points.size() < 3) return;
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t j = 0; j < points.size(); ++j) images[points[j]] = points[(j + 1) % points.size()];
  gens.emplace_back(images);
}

bool generated_within(const PermGroup& inner, const StabilizerChain& outer) {
  return std::all_of(inner.generators().begin(), inner.generators().end(),
                     [&](const Perm& x) { return outer.contains(x); });
}

bool subgroup(const PermGroup& inner, const PermGroup& outer) {
  if (inner.degree() != outer.degree()) return false;
  return generated_within(inner, StabilizerChain(outer.degree(), outer.generators()));
}

Perm embed(const Perm& p, std::size_t degree, std::size_t offset) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t f = 0; f < p.degree(); ++f) images[offset + f] = static_cast<Point>(offset + p[static_cast<Point>(f)]);
  return Perm(std::move(images));
}

}  // namespace

std::vector<ReductOfUnary> enumerate_unary_reducts(const UnaryStructure& u, const Caps& caps) {
  require_valid(u);
  const std::size_t k = u.orbits.size();
  if (k > caps.orbit_cap) {
    throw CapExceeded(std::to_string(k) + " orbits exceed orbit_cap = " + std::to_string(caps.orbit_cap));
  }
  std::vector<ReductOfUnary> out;
  partitions::for_each_set_partition(k, [&](std::span<const std::uint32_t> rgs) {
    const std::uint32_t blocks = k ? *std::max_element(rgs.begin(), rgs.end()) + 1 : 0;
    ClassPartition classes;
    classes.classes.resize(blocks);
    std::vector<bool> infinite(blocks, false);
    std::vector<std::uint64_t> points(blocks, 0);
    for (std::size_t i = 0; i < k; ++i) {
      classes.classes[rgs[i]].push_back(u.orbits[i].name);
      if (u.orbits[i].size.is_infinite()) {
        infinite[rgs[i]] = true;
      } else {
        points[rgs[i]] += u.orbits[i].size.size();
      }
    }
    for (std::uint32_t b = 0; b < blocks; ++b) {
      if (!infinite[b] && points[b] != 1) return true;
    }
    std::vector<Point> singletons, infinites;
    for (std::uint32_t b = 0; b < blocks; ++b) (infinite[b] ? infinites : singletons).push_back(b);
    std::vector<Perm> type_gens;
    add_symmetric_on(type_gens, blocks, singletons);
    add_symmetric_on(type_gens, blocks, infinites);
    const PermGroup type_stabilizer(blocks, std::move(type_gens));
    for (const auto& a : subgroups_above(PermGroup::trivial(blocks), type_stabilizer, caps)) {
      out.push_back({u, classes, pruned(a.group)});
    }
    return true;
  });
  if (out.empty()) {
    throw Unsupported("a finite orbit of size > 1 needs an infinite orbit to share a class with");
  }
  return out;
}

BigInt count_unary_reducts(const UnaryStructure& u, const Caps& caps) {
  return enumerate_unary_reducts(u, caps).size();
}

std::vector<CoveringReduct> enumerate_covering_reducts(const FiberedStructure& c, const Caps& caps) {
  require_valid(c);
  const std::size_t k = c.base.orbits.size();
  const std::size_t labels = c.label_count();
  if (labels > caps.fiber_sum_cap) {
    throw CapExceeded("fiber sizes sum to " + std::to_string(labels) + ", above fiber_sum_cap = " +
                      std::to_string(caps.fiber_sum_cap));
  }
  BigInt ambient_order = 1;
  std::vector<PermGroup> factors;
  for (std::size_t i = 0; i < k; ++i) {
    ambient_order *= factorial(c.fiber_size(i));
    factors.push_back(PermGroup::symmetric(c.fiber_size(i)));
  }
  if (ambient_order > caps.cover_order_cap) {
    throw CapExceeded("prod |F_i|! = " + to_string(ambient_order) + " exceeds cover_order_cap = " +
                      std::to_string(caps.cover_order_cap));
  }
  const PermGroup ambient = direct_product(factors);

  std::vector<CoveringReduct> out;
  for (const auto& h : all_subgroups(ambient, caps)) {
    const CoveringReduct shell{c, pruned(h.group), {}};
    std::vector<std::vector<PermGroup>> choices(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t offset = c.label_offset(i), size = c.fiber_size(i);
      if (c.base.orbits[i].size.is_finite()) {
        // The slice: elements of H moving only orbit i's labels.
        std::vector<Perm> slice;
        for (const auto& x : h.elements) {
          bool inside = true;
          for (std::size_t p = 0; p < labels && inside; ++p) {
            inside = (p >= offset && p < offset + size) || x[static_cast<Point>(p)] == p;
          }
          if (!inside) continue;
          std::vector<Point> images(size);
          for (std::size_t f = 0; f < size; ++f) images[f] = x[static_cast<Point>(offset + f)] - static_cast<Point>(offset);
          slice.emplace_back(std::move(images));
        }
        choices[i].push_back(pruned(PermGroup(size, std::move(slice))));
      } else {
        for (const auto& n : normal_subgroups(shell.projection(i), caps)) choices[i].push_back(pruned(n.group));
      }
    }
    // Odometer over the per-orbit choices.
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      bool product_inside = true;
      for (std::size_t i = 0; i < k && product_inside; ++i) {
        for (const auto& nu : choices[i][pick[i]].generators()) {
          if (!h.contains(embed(nu, labels, c.label_offset(i)))) {
            product_inside = false;
            break;
          }
        }
      }
      if (product_inside) {
        CoveringReduct r = shell;
        for (std::size_t i = 0; i < k; ++i) r.n_groups.push_back(choices[i][pick[i]]);
        out.push_back(std::move(r));
      }
      std::size_t i = k;
      while (i > 0 && pick[i - 1] + 1 == choices[i - 1].size()) pick[--i] = 0;
      if (i == 0) break;
      ++pick[i - 1];
    }
  }
  return out;
}

BigInt count_covering_reducts(const FiberedStructure& c, const Caps& caps) {
  return enumerate_covering_reducts(c, caps).size();
}

bool kernel_membership(const CoveringReduct& r, const std::vector<FiberAction>& assignment) {
  require_valid(r);
  const auto& c = r.cover;
  const std::size_t k = c.base.orbits.size();
  std::vector<std::map<std::size_t, Perm>> per_orbit(k);
  for (const auto& entry : assignment) {
    std::size_t i;
    try {
      i = c.base.index_of(entry.orbit);
    } catch (const ValidationError&) {
      throw ValidationError("assignment references unknown fiber: orbit '" + entry.orbit + "'");
    }
    const auto& size = c.base.orbits[i].size;
    if (size.is_finite() && entry.base_index >= size.size()) {
      throw ValidationError("assignment references unknown fiber: base point " + std::to_string(entry.base_index) +
                            " of orbit '" + entry.orbit + "'");
    }
    if (entry.perm.degree() != c.fiber_size(i)) {
      throw ValidationError("fiber action " + entry.perm.str() + " has the wrong degree for orbit '" + entry.orbit + "'");
    }
    auto [it, inserted] = per_orbit[i].emplace(entry.base_index, entry.perm);
    if (!inserted && it->second != entry.perm) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (per_orbit[i].empty()) {
      throw ValidationError("assignment has no fiber over orbit '" + c.base.orbits[i].name + "'");
    }
  }

  std::vector<Point> representative;
  for (std::size_t i = 0; i < k; ++i) {
    const PermGroup hi = r.projection(i);
    const StabilizerChain h_chain(hi.degree(), hi.generators());
    const StabilizerChain n_chain(c.fiber_size(i), r.n_groups[i].generators());
    const Perm& first = per_orbit[i].begin()->second;
    const Perm first_inv = first.inverse();
    for (const auto& [base, perm] : per_orbit[i]) {
      if (!h_chain.contains(perm) || !n_chain.contains(first_inv * perm)) return false;
    }
    const std::size_t offset = c.label_offset(i);
    for (std::size_t f = 0; f < c.fiber_size(i); ++f) representative.push_back(static_cast<Point>(offset + first[static_cast<Point>(f)]));
  }
  return contains(r.h_group, Perm(std::move(representative)));
}

bool group_contains(const ReductOfUnary& larger, const ReductOfUnary& smaller) {
  if (larger.base != smaller.base) throw ValidationError("reducts over different bases are not comparable");
  std::map<std::string, std::size_t> class_of;
  for (std::size_t d = 0; d < larger.nabla.classes.size(); ++d) {
    for (const auto& name : larger.nabla.classes[d]) class_of[name] = d;
  }
  // Each class of the smaller group must lie inside one larger class.
  std::vector<std::size_t> host(smaller.nabla.classes.size());
  for (std::size_t j = 0; j < smaller.nabla.classes.size(); ++j) {
    const auto& cls = smaller.nabla.classes[j];
    host[j] = class_of.at(cls.front());
    for (const auto& name : cls) {
      if (class_of.at(name) != host[j]) return false;
    }
  }
  const std::size_t classes = larger.nabla.classes.size();
  const StabilizerChain action_chain(classes, larger.action.generators());
  for (const auto& a : smaller.action.generators()) {
    std::vector<Point> induced(classes, 0);
    std::vector<bool> set(classes, false);
    for (std::size_t j = 0; j < host.size(); ++j) {
      const auto image = static_cast<Point>(host[a[static_cast<Point>(j)]]);
      if (set[host[j]] && induced[host[j]] != image) return false;
      induced[host[j]] = image;
      set[host[j]] = true;
    }
    std::vector<Point> sorted = induced;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (!action_chain.contains(Perm(std::move(induced)))) return false;
  }
  return true;
}

bool group_contains(const CoveringReduct& larger, const CoveringReduct& smaller) {
  if (larger.cover != smaller.cover) throw ValidationError("covering reducts over different covers are not comparable");
  if (!subgroup(smaller.h_group, larger.h_group)) return false;
  for (std::size_t i = 0; i < larger.n_groups.size(); ++i) {
    // Over a singleton orbit there is one fiber, so N_i plays no role.
    if (larger.cover.base.orbits[i].size.is_finite()) continue;
    if (!subgroup(smaller.n_groups[i], larger.n_groups[i])) return false;
  }
  return true;
}

ReductOfUnary as_reduct(const UnaryStructure& u) {
  require_valid(u);
  ReductOfUnary r{u, {}, PermGroup::trivial(u.orbits.size())};
  for (const auto& o : u.orbits) {
    if (o.size.is_finite() && o.size.size() != 1) {
      throw Unsupported("orbit '" + o.name + "' is finite with more than one point; it is not a class");
    }
    r.nabla.classes.push_back({o.name});
  }
  return r;
}

CoveringReduct as_covering_reduct(const FiberedStructure& c) {
  require_valid(c);
  CoveringReduct r{c, PermGroup::trivial(c.label_count()), {}};
  for (std::size_t i = 0; i < c.base.orbits.size(); ++i) r.n_groups.push_back(PermGroup::trivial(c.fiber_size(i)));
  return r;
}

std::vector<StructureDescription> reducts_of(const StructureDescription& s, const Caps& caps) {
  std::vector<StructureDescription> out;
  if (const auto* u = std::get_if<UnaryStructure>(&s)) {
    for (auto& r : enumerate_unary_reducts(*u, caps)) out.emplace_back(std::move(r));
  } else if (const auto* r = std::get_if<ReductOfUnary>(&s)) {
    require_valid(s);
    for (auto& x : enumerate_unary_reducts(r->base, caps)) {
      if (group_contains(x, *r)) out.emplace_back(std::move(x));
    }
  } else if (const auto* c = std::get_if<FiberedStructure>(&s)) {
    for (auto& x : enumerate_covering_reducts(*c, caps)) out.emplace_back(std::move(x));
  } else {
    const auto& cr = std::get<CoveringReduct>(s);
    require_valid(s);
    for (auto& x : enumerate_covering_reducts(cr.cover, caps)) {
      if (group_contains(x, cr)) out.emplace_back(std::move(x));
    }
  }
  return out;
}

}  // namespace orbitforge
