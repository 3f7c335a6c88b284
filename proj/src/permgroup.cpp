#include "orbitforge/permgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "orbitforge/errors.hpp"
#include "orbitforge/partitions.hpp"
#include "orbitforge/stabilizer_chain.hpp"

namespace orbitforge {

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) {
      throw ValidationError("generator " + g.str() + " does not have degree " + std::to_string(degree_));
    }
  }
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(std::size_t degree) {
  std::vector<Perm> gens;
  if (degree >= 2) {
    gens.push_back(Perm::from_cycles(degree, {{0, 1}}));
    if (degree >= 3) {
      std::vector<Point> images(degree);
      for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>((i + 1) % degree);
      gens.emplace_back(std::move(images));
    }
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::cyclic(std::size_t degree) {
  if (degree < 2) return trivial(degree);
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>((i + 1) % degree);
  return PermGroup(degree, {Perm(std::move(images))});
}

bool MaterializedGroup::contains(const Perm& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

std::size_t DomainPartition::block_count() const {
  std::uint32_t count = 0;
  for (auto b : block_of) count = std::max(count, b + 1);
  return count;
}

std::vector<std::vector<Point>> DomainPartition::blocks() const {
  std::vector<std::vector<Point>> out(block_count());
  for (std::size_t p = 0; p < block_of.size(); ++p) out[block_of[p]].push_back(static_cast<Point>(p));
  return out;
}

DomainPartition DomainPartition::normalized(std::vector<std::uint32_t> labels) {
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (auto& label : labels) {
    auto [it, inserted] = renumber.emplace(label, static_cast<std::uint32_t>(renumber.size()));
    label = it->second;
  }
  return DomainPartition{std::move(labels)};
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Closure of `known` (a group, closed) and `extra` by Dimino's method:
// the result is a union of right cosets known * r.
void extend_closure(std::vector<Perm>& elements, std::unordered_set<Perm, PermHash>& member,
                    const std::vector<Perm>& generators, const Perm& extra, std::uint64_t cap) {
  if (member.contains(extra)) return;
  const std::vector<Perm> base(elements);
  auto add_coset = [&](const Perm& rep) {
    if (elements.size() + base.size() > cap) {
      throw CapExceeded("group order exceeds order_cap = " + std::to_string(cap));
    }
    for (const auto& h : base) {
      Perm x = h * rep;
      member.insert(x);
      elements.push_back(std::move(x));
    }
  };
  std::vector<Perm> reps{extra};
  add_coset(extra);
  std::vector<const Perm*> all_gens;
  for (const auto& g : generators) all_gens.push_back(&g);
  all_gens.push_back(&extra);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (const Perm* g : all_gens) {
      Perm candidate = reps[r] * *g;
      if (!member.contains(candidate)) {
        add_coset(candidate);
        reps.push_back(std::move(candidate));
      }
    }
  }
}

std::vector<Perm> closure(std::size_t degree, const std::vector<Perm>& generators, std::uint64_t cap) {
  std::vector<Perm> elements{Perm::identity(degree)};
  std::unordered_set<Perm, PermHash> member{elements.front()};
  std::vector<Perm> used;
  for (const auto& g : generators) {
    extend_closure(elements, member, used, g, cap);
    used.push_back(g);
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

}  // namespace

std::vector<Perm> elements(const PermGroup& g, const Caps& caps) {
  return closure(g.degree(), g.generators(), caps.order_cap);
}

MaterializedGroup materialize(const PermGroup& g, const Caps& caps) { return {g, elements(g, caps)}; }

BigInt order(const PermGroup& g) { return StabilizerChain(g.degree(), g.generators()).order(); }

bool contains(const PermGroup& g, const Perm& x) {
  return StabilizerChain(g.degree(), g.generators()).contains(x);
}

namespace {

std::vector<std::vector<Point>> orbits_under(std::size_t degree, std::span<const Perm> generators) {
  UnionFind uf(degree);
  for (const auto& s : generators) {
    for (Point x = 0; x < degree; ++x) uf.unite(x, s[x]);
  }
  std::map<std::size_t, std::vector<Point>> by_root;
  for (Point x = 0; x < degree; ++x) by_root[uf.find(x)].push_back(x);
  std::vector<std::vector<Point>> out;
  for (auto& [root, orbit] : by_root) out.push_back(std::move(orbit));
  return out;
}

struct Descent {
  std::size_t degree;
  bool injective;
  std::uint64_t cap;
  std::uint64_t nodes = 0;

  BigInt count(const std::vector<Perm>& generators, std::vector<Point>& prefix, unsigned remaining) {
    if (remaining == 0) return 1;
    const auto orbits = orbits_under(degree, generators);
    BigInt total = 0;
    for (const auto& orbit : orbits) {
      const Point rep = orbit.front();
      const bool in_prefix = std::find(prefix.begin(), prefix.end(), rep) != prefix.end();
      if (injective && in_prefix) continue;
      if (++nodes > cap) throw CapExceeded("orbit descent exceeds work_cap = " + std::to_string(cap));
      if (remaining == 1) {
        total += 1;
        continue;
      }
      prefix.push_back(rep);
      if (in_prefix) {
        total += count(generators, prefix, remaining - 1);
      } else {
        const Point base[] = {rep};
        StabilizerChain chain(degree, generators, base);
        total += count(chain.stabilizer_generators(1), prefix, remaining - 1);
      }
      prefix.pop_back();
    }
    return total;
  }
};

void require_tuple_length(const PermGroup& g, unsigned n, bool injective) {
  if (n == 0) throw ValidationError("tuple length must be positive");
  if (injective && n > g.degree()) throw ValidationError("injective tuple length exceeds the degree");
}

}  // namespace

std::vector<std::vector<Point>> point_orbits(const PermGroup& g) {
  return orbits_under(g.degree(), g.generators());
}

BigInt orbit_count_injective(const PermGroup& g, unsigned n, const Caps& caps) {
  require_tuple_length(g, n, true);
  Descent descent{g.degree(), true, caps.work_cap};
  std::vector<Point> prefix;
  return descent.count(g.generators(), prefix, n);
}

BigInt orbit_count_tuples(const PermGroup& g, unsigned n, const Caps& caps) {
  require_tuple_length(g, n, false);
  Descent descent{g.degree(), false, caps.work_cap};
  std::vector<Point> prefix;
  return descent.count(g.generators(), prefix, n);
}

namespace {

BigInt exhaustive_tuple_orbits(const PermGroup& g, unsigned n, bool injective, const Caps& caps) {
  require_tuple_length(g, n, injective);
  const std::size_t d = g.degree();
  const BigInt total = pow(BigInt(d), n);
  if (total > caps.work_cap) {
    throw CapExceeded("tuple space " + total.str() + " exceeds work_cap = " + std::to_string(caps.work_cap));
  }
  const auto size = static_cast<std::size_t>(total);
  std::vector<Point> digits(n);
  auto decode = [&](std::size_t index) {
    for (unsigned i = n; i-- > 0;) {
      digits[i] = static_cast<Point>(index % d);
      index /= d;
    }
  };
  auto is_injective = [&]() {
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = i + 1; j < n; ++j) {
        if (digits[i] == digits[j]) return false;
      }
    }
    return true;
  };
  UnionFind uf(size);
  std::vector<bool> counted(size, false);
  for (std::size_t index = 0; index < size; ++index) {
    decode(index);
    if (injective && !is_injective()) continue;
    counted[index] = true;
    for (const auto& s : g.generators()) {
      std::size_t image = 0;
      for (unsigned i = 0; i < n; ++i) image = image * d + s[digits[i]];
      uf.unite(index, image);
    }
  }
  std::uint64_t roots = 0;
  for (std::size_t index = 0; index < size; ++index) {
    if (counted[index] && uf.find(index) == index) ++roots;
  }
  return roots;
}

}  // namespace

BigInt orbit_count_injective_exhaustive(const PermGroup& g, unsigned n, const Caps& caps) {
  return exhaustive_tuple_orbits(g, n, true, caps);
}

BigInt orbit_count_tuples_exhaustive(const PermGroup& g, unsigned n, const Caps& caps) {
  return exhaustive_tuple_orbits(g, n, false, caps);
}

BigInt orbit_count_subsets(const PermGroup& g, unsigned n, const Caps& caps) {
  const std::size_t d = g.degree();
  if (n == 0 || n > d) throw ValidationError("subset size must be in 1..degree");
  const BigInt total = binomial(d, n);
  if (total > caps.work_cap) {
    throw CapExceeded("subset space " + total.str() + " exceeds work_cap = " + std::to_string(caps.work_cap));
  }
  // choose[m][r] = C(m, r) for ranking in the combinatorial number system.
  std::vector<std::vector<std::uint64_t>> choose(d + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t m = 0; m <= d; ++m) {
    choose[m][0] = 1;
    for (std::size_t r = 1; r <= n && r <= m; ++r) choose[m][r] = choose[m - 1][r - 1] + (r < m ? choose[m - 1][r] : 0);
  }
  auto rank = [&](std::vector<Point>& subset) {
    std::sort(subset.begin(), subset.end());
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) r += choose[subset[i]][i + 1];
    return r;
  };

  const auto size = static_cast<std::size_t>(total);
  UnionFind uf(size);
  std::vector<Point> subset(n);
  std::iota(subset.begin(), subset.end(), Point{0});
  std::vector<Point> image(n);
  while (true) {
    std::vector<Point> current(subset);
    const auto index = rank(current);
    for (const auto& s : g.generators()) {
      for (unsigned i = 0; i < n; ++i) image[i] = s[subset[i]];
      uf.unite(index, rank(image));
    }
    // Next combination in lexicographic order.
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && subset[i] == d - n + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (unsigned j = i + 1; j < n; ++j) subset[j] = subset[j - 1] + 1;
  }
  std::uint64_t roots = 0;
  for (std::size_t index = 0; index < size; ++index) {
    if (uf.find(index) == index) ++roots;
  }
  return roots;
}

PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> points) {
  for (Point p : points) {
    if (p >= g.degree()) throw ValidationError("stabilized point out of range");
  }
  StabilizerChain chain(g.degree(), g.generators(), points);
  return PermGroup(g.degree(), chain.stabilizer_generators(points.size()));
}

bool preserves(const PermGroup& g, const DomainPartition& partition) {
  if (partition.block_of.size() != g.degree()) return false;
  const std::size_t blocks = partition.block_count();
  std::vector<std::int64_t> image_block(blocks);
  for (const auto& s : g.generators()) {
    std::fill(image_block.begin(), image_block.end(), -1);
    for (Point x = 0; x < g.degree(); ++x) {
      const auto from = partition.block_of[x];
      const auto to = static_cast<std::int64_t>(partition.block_of[s[x]]);
      if (image_block[from] == -1) image_block[from] = to;
      else if (image_block[from] != to) return false;
    }
  }
  return true;
}

std::vector<DomainPartition> invariant_partitions(const PermGroup& g, const Caps& caps) {
  if (g.degree() > caps.partition_cap) {
    throw CapExceeded("degree " + std::to_string(g.degree()) + " exceeds partition_cap = " +
                      std::to_string(caps.partition_cap));
  }
  std::vector<DomainPartition> out;
  partitions::for_each_set_partition(g.degree(), [&](std::span<const std::uint32_t> rgs) {
    DomainPartition candidate{std::vector<std::uint32_t>(rgs.begin(), rgs.end())};
    if (preserves(g, candidate)) out.push_back(std::move(candidate));
    return true;
  });
  return out;
}

namespace {

bool canonical_less(const MaterializedGroup& a, const MaterializedGroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements < b.elements;
}

}  // namespace

std::vector<MaterializedGroup> subgroups_above(const PermGroup& base, const PermGroup& ambient, const Caps& caps) {
  if (base.degree() != ambient.degree()) throw ValidationError("base and ambient degrees differ");
  const auto ambient_elements = elements(ambient, caps);
  const auto base_elements = elements(base, caps);
  for (const auto& s : base.generators()) {
    if (!std::binary_search(ambient_elements.begin(), ambient_elements.end(), s)) {
      throw ValidationError("base is not a subgroup of ambient");
    }
  }
  const std::size_t index = ambient_elements.size() / base_elements.size();
  if (index > caps.index_cap) {
    throw CapExceeded("index " + std::to_string(index) + " exceeds index_cap = " + std::to_string(caps.index_cap));
  }

  // One representative g per coset {g * b : b in base}; adjoining any
  // member of the coset to a group containing base gives the same group.
  std::vector<Perm> reps;
  {
    std::unordered_set<Perm, PermHash> covered;
    for (const auto& g : ambient_elements) {
      if (covered.contains(g)) continue;
      reps.push_back(g);
      for (const auto& b : base_elements) covered.insert(g * b);
    }
  }

  std::map<std::vector<Perm>, std::size_t> seen;
  std::vector<MaterializedGroup> found;
  found.push_back({base, base_elements});
  seen.emplace(base_elements, 0);
  for (std::size_t next = 0; next < found.size(); ++next) {
    for (const auto& g : reps) {
      if (found[next].contains(g)) continue;
      std::vector<Perm> elems = found[next].elements;
      std::unordered_set<Perm, PermHash> member(elems.begin(), elems.end());
      extend_closure(elems, member, found[next].group.generators(), g, caps.order_cap);
      std::sort(elems.begin(), elems.end());
      if (seen.contains(elems)) continue;
      auto gens = found[next].group.generators();
      gens.push_back(g);
      seen.emplace(elems, found.size());
      found.push_back({PermGroup(base.degree(), std::move(gens)), std::move(elems)});
    }
  }
  std::sort(found.begin(), found.end(), canonical_less);
  return found;
}

std::vector<MaterializedGroup> all_subgroups(const PermGroup& g, const Caps& caps) {
  return subgroups_above(PermGroup::trivial(g.degree()), g, caps);
}

std::vector<MaterializedGroup> normal_subgroups(const PermGroup& g, const Caps& caps) {
  std::vector<MaterializedGroup> out;
  for (auto& candidate : all_subgroups(g, caps)) {
    bool normal = true;
    for (const auto& x : g.generators()) {
      const Perm x_inv = x.inverse();
      for (const auto& s : candidate.group.generators()) {
        if (!candidate.contains(x_inv * s * x)) {
          normal = false;
          break;
        }
      }
      if (!normal) break;
    }
    if (normal) out.push_back(std::move(candidate));
  }
  return out;
}

PermGroup direct_product(std::span<const PermGroup> groups) {
  std::size_t degree = 0;
  for (const auto& g : groups) degree += g.degree();
  std::vector<Perm> gens;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    for (const auto& s : g.generators()) {
      std::vector<Point> images(degree);
      std::iota(images.begin(), images.end(), Point{0});
      for (std::size_t x = 0; x < g.degree(); ++x) images[offset + x] = static_cast<Point>(offset + s[x]);
      gens.emplace_back(std::move(images));
    }
    offset += g.degree();
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup imprimitive_wreath(const PermGroup& fiber, std::size_t blocks, const PermGroup& top) {
  if (top.degree() != blocks) throw ValidationError("top group must act on the block indices");
  const std::size_t f = fiber.degree();
  const std::size_t degree = f * blocks;
  std::vector<Perm> gens;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (const auto& a : fiber.generators()) {
      std::vector<Point> images(degree);
      std::iota(images.begin(), images.end(), Point{0});
      for (std::size_t x = 0; x < f; ++x) images[b * f + x] = static_cast<Point>(b * f + a[x]);
      gens.emplace_back(std::move(images));
    }
  }
  for (const auto& t : top.generators()) {
    std::vector<Point> images(degree);
    for (std::size_t b = 0; b < blocks; ++b) {
      for (std::size_t x = 0; x < f; ++x) images[b * f + x] = static_cast<Point>(t[b] * f + x);
    }
    gens.emplace_back(std::move(images));
  }
  return PermGroup(degree, std::move(gens));
}

}  // namespace orbitforge
