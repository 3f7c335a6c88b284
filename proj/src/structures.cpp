#include "orbitforge/structures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "orbitforge/errors.hpp"
#include "orbitforge/stabilizer_chain.hpp"

namespace orbitforge {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

std::string join(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "}";
}

std::uint64_t finite_points(const UnaryStructure& u) {
  std::uint64_t total = 0;
  for (const auto& o : u.orbits) total += o.size.is_finite() ? o.size.size() : 0;
  return total;
}

std::vector<std::string> finite_orbit_names(const UnaryStructure& u) {
  std::vector<std::string> out;
  for (const auto& o : u.orbits) {
    if (o.size.is_finite()) out.push_back(o.name);
  }
  return out;
}

// Cardinality of a class: 0 for infinite, otherwise the number of points.
std::uint64_t class_size(const UnaryStructure& u, const std::vector<std::string>& cls) {
  std::uint64_t total = 0;
  for (const auto& name : cls) {
    const auto& size = u.orbits[u.index_of(name)].size;
    if (size.is_infinite()) return 0;
    total += size.size();
  }
  return total;
}

Perm restrict_segment(const Perm& g, std::size_t offset, std::size_t length) {
  std::vector<Point> images(length);
  for (std::size_t f = 0; f < length; ++f) images[f] = g[static_cast<Point>(offset + f)] - static_cast<Point>(offset);
  return Perm(std::move(images));
}

bool preserves_segments(const Perm& g, const FiberedStructure& c) {
  for (std::size_t i = 0; i < c.base.orbits.size(); ++i) {
    const std::size_t lo = c.label_offset(i), hi = lo + c.fiber_size(i);
    for (std::size_t x = lo; x < hi; ++x) {
      if (g[static_cast<Point>(x)] < lo || g[static_cast<Point>(x)] >= hi) return false;
    }
  }
  return true;
}

void validate_unary(const UnaryStructure& u, std::vector<std::string>& out) {
  if (u.orbits.empty()) out.push_back("orbit list is empty");
  std::set<std::string> seen;
  for (const auto& o : u.orbits) {
    if (o.name.empty()) out.push_back("orbit name is empty");
    if (!seen.insert(o.name).second) out.push_back("orbit name '" + o.name + "' is not unique");
  }
}

void validate_reduct(const ReductOfUnary& r, std::vector<std::string>& out) {
  validate_unary(r.base, out);
  if (!out.empty()) return;
  std::map<std::string, int> uses;
  for (const auto& o : r.base.orbits) uses[o.name] = 0;
  bool partition_ok = true;
  for (const auto& cls : r.nabla.classes) {
    if (cls.empty()) {
      out.push_back("class is empty");
      partition_ok = false;
    }
    for (const auto& name : cls) {
      auto it = uses.find(name);
      if (it == uses.end()) {
        out.push_back("class " + join(cls) + " names unknown orbit '" + name + "'");
        partition_ok = false;
      } else {
        ++it->second;
      }
    }
  }
  for (const auto& [name, count] : uses) {
    if (count != 1) {
      out.push_back("orbit '" + name + "' lies in " + std::to_string(count) +
                    " classes; classes must partition the orbits");
      partition_ok = false;
    }
  }
  if (!partition_ok) return;

  std::vector<bool> infinite;
  for (const auto& cls : r.nabla.classes) {
    const auto size = class_size(r.base, cls);
    infinite.push_back(size == 0);
    if (size > 1) {
      out.push_back("class " + join(cls) + " has finite size " + std::to_string(size) +
                    "; every class must be a singleton or infinite (singleton-or-infinite rule)");
    }
  }
  if (r.action.degree() != r.nabla.classes.size()) {
    out.push_back("action has degree " + std::to_string(r.action.degree()) + " but there are " +
                  std::to_string(r.nabla.classes.size()) + " classes");
    return;
  }
  for (const auto& a : r.action.generators()) {
    for (std::size_t j = 0; j < infinite.size(); ++j) {
      if (infinite[j] != infinite[a[static_cast<Point>(j)]]) {
        out.push_back("action generator " + a.str() +
                      " maps a singleton class to an infinite one; the action must preserve class types");
        break;
      }
    }
  }
}

void validate_fibered(const FiberedStructure& c, std::vector<std::string>& out) {
  validate_unary(c.base, out);
  if (!out.empty()) return;
  for (const auto& o : c.base.orbits) {
    if (o.size.is_finite() && o.size.size() != 1) {
      out.push_back("cover base orbit '" + o.name + "' has size " + o.size.str() +
                    "; base orbits must be singletons or infinite");
    }
  }
  if (c.fibers.size() != c.base.orbits.size()) {
    out.push_back("expected one fiber label set per orbit");
    return;
  }
  for (std::size_t i = 0; i < c.fibers.size(); ++i) {
    const auto& labels = c.fibers[i];
    if (labels.empty()) out.push_back("fiber over orbit '" + c.base.orbits[i].name + "' is empty");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
      out.push_back("fiber labels over orbit '" + c.base.orbits[i].name + "' are not unique");
    }
  }
}

void validate_covering(const CoveringReduct& r, std::vector<std::string>& out) {
  validate_fibered(r.cover, out);
  if (!out.empty()) return;
  const auto& c = r.cover;
  if (r.h_group.degree() != c.label_count()) {
    out.push_back("H has degree " + std::to_string(r.h_group.degree()) + " but the fibers have " +
                  std::to_string(c.label_count()) + " labels in total");
    return;
  }
  for (const auto& h : r.h_group.generators()) {
    if (!preserves_segments(h, c)) out.push_back("H generator " + h.str() + " moves a label to another orbit's fiber");
  }
  if (r.n_groups.size() != c.base.orbits.size()) {
    out.push_back("expected one N_i per orbit");
    return;
  }
  for (std::size_t i = 0; i < r.n_groups.size(); ++i) {
    if (r.n_groups[i].degree() != c.fiber_size(i)) {
      out.push_back("N_i for orbit '" + c.base.orbits[i].name + "' has the wrong degree");
    }
  }
  if (!out.empty()) return;

  for (std::size_t i = 0; i < r.n_groups.size(); ++i) {
    const auto& name = c.base.orbits[i].name;
    const PermGroup hi = r.projection(i);
    const StabilizerChain h_chain(hi.degree(), hi.generators());
    const StabilizerChain n_chain(c.fiber_size(i), r.n_groups[i].generators());
    bool contained = true;
    for (const auto& nu : r.n_groups[i].generators()) contained = contained && h_chain.contains(nu);
    if (!contained) {
      out.push_back("orbit '" + name + "': N_i not contained in H_i (N_i ⊲ H_i required)");
      continue;
    }
    bool normal = true;
    for (const auto& h : hi.generators()) {
      for (const auto& nu : r.n_groups[i].generators()) normal = normal && n_chain.contains(h.inverse() * nu * h);
    }
    if (!normal) out.push_back("orbit '" + name + "': N_i is not normal in H_i (N_i ⊲ H_i required)");
  }
  if (!out.empty()) return;

  const StabilizerChain h_chain(r.h_group.degree(), r.h_group.generators());
  for (std::size_t i = 0; i < r.n_groups.size(); ++i) {
    const std::size_t offset = c.label_offset(i);
    for (const auto& nu : r.n_groups[i].generators()) {
      std::vector<Point> images(c.label_count());
      std::iota(images.begin(), images.end(), Point{0});
      for (std::size_t f = 0; f < c.fiber_size(i); ++f) images[offset + f] = static_cast<Point>(offset + nu[static_cast<Point>(f)]);
      if (!h_chain.contains(Perm(std::move(images)))) {
        out.push_back("orbit '" + c.base.orbits[i].name + "': the product of the N_i is not contained in H");
        break;
      }
    }
  }
}

std::vector<std::size_t> fiber_sizes(const StructureDescription& s) {
  const auto& base = base_of(s);
  std::vector<std::size_t> out(base.orbits.size(), 1);
  const FiberedStructure* c = std::get_if<FiberedStructure>(&s);
  if (const auto* r = std::get_if<CoveringReduct>(&s)) c = &r->cover;
  if (c) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c->fiber_size(i);
  }
  return out;
}

// Points over base point b of orbit i, in label order.
struct Layout {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> fiber;
  std::size_t degree = 0;

  Point at(std::size_t orbit, std::size_t base, std::size_t label) const {
    return static_cast<Point>(offsets[orbit] + base * fiber[orbit] + label);
  }
};

Layout make_layout(const std::vector<std::size_t>& fiber, std::span<const std::size_t> sizes) {
  Layout l;
  l.fiber = fiber;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    l.offsets.push_back(l.degree);
    l.degree += sizes[i] * fiber[i];
  }
  return l;
}

void identity_images(std::size_t degree, std::vector<Point>& images) {
  images.resize(degree);
  std::iota(images.begin(), images.end(), Point{0});
}

// Adds a transposition and a full cycle of the slots; slot j is a list of
// points moved together, position by position.
void add_symmetric(std::vector<Perm>& gens, std::size_t degree, const std::vector<std::vector<Point>>& slots) {
  const std::size_t m = slots.size();
  if (m < 2) return;
  std::vector<Point> images;
  identity_images(degree, images);
  for (std::size_t f = 0; f < slots[0].size(); ++f) {
    images[slots[0][f]] = slots[1][f];
    images[slots[1][f]] = slots[0][f];
  }
  gens.emplace_back(images);
  if (m < 3) return;
  identity_images(degree, images);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t f = 0; f < slots[j].size(); ++f) images[slots[j][f]] = slots[(j + 1) % m][f];
  }
  gens.emplace_back(images);
}

void check_sizes(const UnaryStructure& u, std::span<const std::size_t> sizes) {
  if (sizes.size() != u.orbits.size()) {
    throw ValidationError("expected " + std::to_string(u.orbits.size()) + " base sizes, got " +
                          std::to_string(sizes.size()));
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& o = u.orbits[i];
    if (o.size.is_finite() && sizes[i] != o.size.size()) {
      throw ValidationError("finite orbit '" + o.name + "' has size " + o.size.str() + " but truncation size " +
                            std::to_string(sizes[i]) + " was requested");
    }
    if (sizes[i] == 0) throw ValidationError("truncation size for orbit '" + o.name + "' must be positive");
  }
}

}  // namespace

Cardinal Cardinal::finite(std::uint64_t size) {
  if (size == 0) throw ValidationError("finite orbit sizes must be at least 1");
  Cardinal c;
  c.size_ = size;
  return c;
}

std::string Cardinal::str() const { return is_infinite() ? "inf" : std::to_string(size_); }

std::size_t UnaryStructure::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (orbits[i].name == name) return i;
  }
  throw ValidationError("unknown orbit '" + name + "'");
}

std::size_t FiberedStructure::label_offset(std::size_t orbit) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < orbit; ++i) offset += fibers[i].size();
  return offset;
}

std::size_t FiberedStructure::label_count() const { return label_offset(fibers.size()); }

PermGroup CoveringReduct::projection(std::size_t orbit) const {
  const std::size_t offset = cover.label_offset(orbit), length = cover.fiber_size(orbit);
  std::vector<Perm> gens;
  for (const auto& h : h_group.generators()) {
    Perm part = restrict_segment(h, offset, length);
    if (!part.is_identity() && std::find(gens.begin(), gens.end(), part) == gens.end()) gens.push_back(std::move(part));
  }
  return PermGroup(length, std::move(gens));
}

const UnaryStructure& base_of(const StructureDescription& s) {
  return std::visit(Overloaded{
                        [](const UnaryStructure& u) -> const UnaryStructure& { return u; },
                        [](const ReductOfUnary& r) -> const UnaryStructure& { return r.base; },
                        [](const FiberedStructure& c) -> const UnaryStructure& { return c.base; },
                        [](const CoveringReduct& r) -> const UnaryStructure& { return r.cover.base; },
                    },
                    s);
}

std::vector<std::string> orbit_names(const UnaryStructure& u) {
  std::vector<std::string> out;
  for (const auto& o : u.orbits) out.push_back(o.name);
  return out;
}

std::string SymbolicPartition::str() const {
  std::string out = kind == Kind::equality ? "equality" : kind == Kind::fibers ? "fibers" : "classes";
  if (blocks.empty()) return out;
  out += kind == Kind::classes ? " " : " + merged ";
  for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? " " : "") + join(blocks[i]);
  return out;
}

std::vector<std::string> validate(const StructureDescription& s) {
  std::vector<std::string> out;
  std::visit(Overloaded{
                 [&](const UnaryStructure& u) { validate_unary(u, out); },
                 [&](const ReductOfUnary& r) { validate_reduct(r, out); },
                 [&](const FiberedStructure& c) { validate_fibered(c, out); },
                 [&](const CoveringReduct& r) { validate_covering(r, out); },
             },
             s);
  return out;
}

void require_valid(const StructureDescription& s) {
  const auto violations = validate(s);
  if (!violations.empty()) throw ValidationError(violations.front());
}

SymbolicPartition nabla(const StructureDescription& s) {
  require_valid(s);
  SymbolicPartition p{SymbolicPartition::Kind::classes, {}};
  if (const auto* r = std::get_if<ReductOfUnary>(&s)) {
    p.blocks = r->nabla.classes;
    return p;
  }
  for (const auto& o : base_of(s).orbits) {
    // A finite orbit with several points splits into singleton classes.
    if (o.size.is_infinite() || o.size.size() == 1) p.blocks.push_back({o.name});
  }
  return p;
}

std::size_t nabla_class_count(const StructureDescription& s) {
  const auto p = nabla(s);
  std::size_t count = p.blocks.size();
  std::set<std::string> listed;
  for (const auto& block : p.blocks) listed.insert(block.begin(), block.end());
  for (const auto& o : base_of(s).orbits) {
    if (!listed.contains(o.name)) count += o.size.size();
  }
  return count;
}

SymbolicPartition delta(const StructureDescription& s) {
  require_valid(s);
  const auto& base = base_of(s);
  const bool covered = std::holds_alternative<FiberedStructure>(s) || std::holds_alternative<CoveringReduct>(s);
  SymbolicPartition p{covered ? SymbolicPartition::Kind::fibers : SymbolicPartition::Kind::equality, {}};
  auto finite = finite_orbit_names(base);
  // Every point over a finite orbit is algebraic over every other point.
  const bool merges = covered ? finite.size() >= 2 : finite_points(base) >= 2;
  if (merges) p.blocks.push_back(std::move(finite));
  return p;
}

SkmParameters skm_parameters(const StructureDescription& s) {
  require_valid(s);
  const auto& base = base_of(s);
  const auto fiber = fiber_sizes(s);
  std::uint64_t largest = 1, finite_total = 0;
  for (std::size_t i = 0; i < base.orbits.size(); ++i) {
    const auto& size = base.orbits[i].size;
    if (size.is_infinite()) {
      largest = std::max<std::uint64_t>(largest, fiber[i]);
    } else {
      finite_total += size.size() * fiber[i];
    }
  }
  SkmParameters out;
  out.k = static_cast<unsigned>(std::max(largest, finite_total));

  std::size_t infinite_classes = 0;
  if (const auto* r = std::get_if<ReductOfUnary>(&s)) {
    for (const auto& cls : r->nabla.classes) infinite_classes += class_size(base, cls) == 0;
  } else {
    for (const auto& o : base.orbits) infinite_classes += o.size.is_infinite();
  }
  out.m = static_cast<unsigned>(infinite_classes + (finite_total > 0 ? 1 : 0));
  return out;
}

StructureDescription split_finite_orbits(const StructureDescription& s) {
  require_valid(s);
  if (const auto* u = std::get_if<UnaryStructure>(&s)) {
    UnaryStructure out = *u;
    for (auto& o : out.orbits) o.size = Cardinal::infinite();
    return out;
  }
  if (const auto* r = std::get_if<ReductOfUnary>(&s)) {
    ReductOfUnary out = *r;
    for (const auto& cls : r->nabla.classes) {
      if (class_size(r->base, cls) == 1) out.base.orbits[r->base.index_of(cls.front())].size = Cardinal::infinite();
    }
    return out;
  }
  throw ValidationError("split_finite_orbits takes a unary structure or a reduct of one");
}

Truncation truncate(const StructureDescription& s, std::span<const std::size_t> base_sizes) {
  require_valid(s);
  const auto& base = base_of(s);
  check_sizes(base, base_sizes);
  const auto fiber = fiber_sizes(s);
  const Layout layout = make_layout(fiber, base_sizes);

  Truncation t;
  t.base_sizes.assign(base_sizes.begin(), base_sizes.end());
  const FiberedStructure* cover = std::get_if<FiberedStructure>(&s);
  if (const auto* r = std::get_if<CoveringReduct>(&s)) cover = &r->cover;
  for (std::size_t i = 0; i < base.orbits.size(); ++i) {
    for (std::size_t b = 0; b < base_sizes[i]; ++b) {
      for (std::size_t f = 0; f < fiber[i]; ++f) {
        t.point_labels.push_back({base.orbits[i].name, cover ? cover->fibers[i][f] : std::string(), b});
      }
    }
  }

  auto base_slots = [&](std::size_t i) {
    std::vector<std::vector<Point>> slots(base_sizes[i]);
    for (std::size_t b = 0; b < base_sizes[i]; ++b) {
      for (std::size_t f = 0; f < fiber[i]; ++f) slots[b].push_back(layout.at(i, b, f));
    }
    return slots;
  };

  std::vector<Perm> gens;
  if (const auto* r = std::get_if<ReductOfUnary>(&s)) {
    std::vector<std::vector<Point>> class_points;
    for (const auto& cls : r->nabla.classes) {
      std::vector<Point> points;
      for (const auto& name : cls) {
        const std::size_t i = base.index_of(name);
        for (std::size_t b = 0; b < base_sizes[i]; ++b) points.push_back(layout.at(i, b, 0));
      }
      std::vector<std::vector<Point>> slots;
      for (auto p : points) slots.push_back({p});
      add_symmetric(gens, layout.degree, slots);
      class_points.push_back(std::move(points));
    }
    for (const auto& a : r->action.generators()) {
      std::vector<Point> images;
      identity_images(layout.degree, images);
      for (std::size_t j = 0; j < class_points.size(); ++j) {
        const auto& from = class_points[j];
        const auto& to = class_points[a[static_cast<Point>(j)]];
        if (from.size() != to.size()) {
          throw ValidationError("classes " + join(r->nabla.classes[j]) + " and " +
                                join(r->nabla.classes[a[static_cast<Point>(j)]]) +
                                " are related by the action but have different truncation sizes");
        }
        for (std::size_t x = 0; x < from.size(); ++x) images[from[x]] = to[x];
      }
      gens.emplace_back(std::move(images));
    }
  } else {
    for (std::size_t i = 0; i < base.orbits.size(); ++i) add_symmetric(gens, layout.degree, base_slots(i));
  }

  if (const auto* r = std::get_if<CoveringReduct>(&s)) {
    for (const auto& h : r->h_group.generators()) {
      std::vector<Point> images;
      identity_images(layout.degree, images);
      for (std::size_t i = 0; i < base.orbits.size(); ++i) {
        const Perm hi = restrict_segment(h, cover->label_offset(i), fiber[i]);
        for (std::size_t b = 0; b < base_sizes[i]; ++b) {
          for (std::size_t f = 0; f < fiber[i]; ++f) images[layout.at(i, b, f)] = layout.at(i, b, hi[static_cast<Point>(f)]);
        }
      }
      gens.emplace_back(std::move(images));
    }
    for (std::size_t i = 0; i < base.orbits.size(); ++i) {
      for (const auto& nu : r->n_groups[i].generators()) {
        std::vector<Point> images;
        identity_images(layout.degree, images);
        for (std::size_t f = 0; f < fiber[i]; ++f) images[layout.at(i, 0, f)] = layout.at(i, 0, nu[static_cast<Point>(f)]);
        gens.emplace_back(std::move(images));
      }
    }
  }

  std::erase_if(gens, [](const Perm& g) { return g.is_identity(); });
  t.group = PermGroup(layout.degree, std::move(gens));
  return t;
}

DomainPartition restrict_to(const SymbolicPartition& p, const StructureDescription& s, const Truncation& t) {
  const auto& base = base_of(s);
  const auto fiber = fiber_sizes(s);
  const Layout layout = make_layout(fiber, t.base_sizes);
  // Labels: points get distinct ids, fibers share one, listed groups share one.
  std::vector<std::uint32_t> label(layout.degree);
  std::uint32_t next = 0;
  std::map<std::string, std::uint32_t> group_id;
  for (const auto& block : p.blocks) {
    const std::uint32_t id = next++;
    for (const auto& name : block) group_id[name] = id;
  }
  for (std::size_t i = 0; i < base.orbits.size(); ++i) {
    const auto grouped = group_id.find(base.orbits[i].name);
    for (std::size_t b = 0; b < t.base_sizes[i]; ++b) {
      const std::uint32_t fiber_id = next++;
      for (std::size_t f = 0; f < fiber[i]; ++f) {
        std::uint32_t id;
        if (grouped != group_id.end()) {
          id = grouped->second;
        } else if (p.kind == SymbolicPartition::Kind::fibers) {
          id = fiber_id;
        } else {
          id = next++;
        }
        label[layout.at(i, b, f)] = id;
      }
    }
  }
  return DomainPartition::normalized(std::move(label));
}

PermGroup truncated_base_group(const Truncation& t) {
  std::vector<PermGroup> parts;
  for (auto size : t.base_sizes) parts.push_back(PermGroup::symmetric(size));
  return direct_product(parts);
}

Perm induced_base_action(const StructureDescription& s, const Truncation& t, const Perm& g) {
  const auto fiber = fiber_sizes(s);
  const Layout layout = make_layout(fiber, t.base_sizes);
  // Base point id of each point.
  std::vector<Point> base_id(layout.degree);
  Point next = 0;
  for (std::size_t i = 0; i < t.base_sizes.size(); ++i) {
    for (std::size_t b = 0; b < t.base_sizes[i]; ++b, ++next) {
      for (std::size_t f = 0; f < fiber[i]; ++f) base_id[layout.at(i, b, f)] = next;
    }
  }
  std::vector<Point> images(next);
  std::vector<bool> set(next, false);
  for (Point x = 0; x < layout.degree; ++x) {
    const Point image = base_id[g[x]];
    if (set[base_id[x]] && images[base_id[x]] != image) {
      throw ValidationError("permutation " + g.str() + " does not map fibers to fibers");
    }
    images[base_id[x]] = image;
    set[base_id[x]] = true;
  }
  return Perm(std::move(images));
}

}  // namespace orbitforge
