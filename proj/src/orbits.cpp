#include "orbitforge/orbits.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbitforge/errors.hpp"
#include "orbitforge/partitions.hpp"

namespace orbitforge {

namespace {

using Q = boost::multiprecision::cpp_rational;

// One orbit or class as seen by a counting term: tuple positions landing in
// it are grouped into blocks (positions sharing a base point), at most
// `capacity` of them (0 = unbounded), and a block of size b contributes
// weight[b].
struct Component {
  std::size_t capacity = 0;
  std::vector<Q> weight;  // indexed by block size, 0..n
};

// Sum over set partitions of m labelled positions of the product of block
// weights, for m = 0..n.
std::vector<Q> component_series(const Component& c, unsigned n) {
  // by_blocks[m][j]: partitions of m positions into exactly j blocks.
  std::vector<std::vector<Q>> by_blocks(n + 1, std::vector<Q>(n + 1));
  by_blocks[0][0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned j = 1; j <= m; ++j) {
      Q sum = 0;
      for (unsigned b = 1; b <= m - j + 1; ++b) {
        if (c.weight[b] == 0 || by_blocks[m - b][j - 1] == 0) continue;
        sum += Q(binomial(m - 1, b - 1)) * c.weight[b] * by_blocks[m - b][j - 1];
      }
      by_blocks[m][j] = sum;
    }
  }
  std::vector<Q> series(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    const unsigned top = c.capacity ? std::min<unsigned>(m, static_cast<unsigned>(c.capacity)) : m;
    for (unsigned j = 0; j <= top; ++j) series[m] += by_blocks[m][j];
  }
  return series;
}

// Sum over all ways to distribute n labelled positions over the components.
Q labelled_total(const std::vector<Component>& components, unsigned n) {
  std::vector<Q> total(n + 1);
  total[0] = 1;
  for (const auto& c : components) {
    const auto series = component_series(c, n);
    std::vector<Q> next(n + 1);
    for (unsigned t = 0; t <= n; ++t) {
      for (unsigned m = 0; m <= t; ++m) {
        if (series[m] == 0 || total[t - m] == 0) continue;
        next[t] += Q(binomial(t, m)) * series[m] * total[t - m];
      }
    }
    total = std::move(next);
  }
  return total[n];
}

BigInt exact_quotient(const Q& sum, const BigInt& order, const char* what) {
  const Q value = sum / Q(order);
  if (boost::multiprecision::denominator(value) != 1) {
    throw std::logic_error(std::string("Burnside sum over ") + what + " is not divisible by the group order");
  }
  return boost::multiprecision::numerator(value);
}

BigInt count_reduct(const ReductOfUnary& r, unsigned n, const Caps& caps) {
  const auto actions = elements(r.action, caps);
  std::vector<bool> infinite;
  for (const auto& cls : r.nabla.classes) {
    bool inf = false;
    for (const auto& name : cls) inf = inf || r.base.orbits[r.base.index_of(name)].size.is_infinite();
    infinite.push_back(inf);
  }
  Component single_point{1, std::vector<Q>(n + 1)};
  Component unbounded{0, std::vector<Q>(n + 1)};
  if (n >= 1) single_point.weight[1] = unbounded.weight[1] = 1;

  Q sum = 0;
  for (const auto& a : actions) {
    // A labelling of positions by classes is fixed by a iff it only uses
    // classes that a fixes.
    std::vector<Component> fixed;
    for (std::size_t j = 0; j < infinite.size(); ++j) {
      if (a[static_cast<Point>(j)] == j) fixed.push_back(infinite[j] ? unbounded : single_point);
    }
    sum += labelled_total(fixed, n);
  }
  return exact_quotient(sum, actions.size(), "the class action");
}

BigInt count_cover(const CoveringReduct& r, unsigned n, const Caps& caps) {
  const auto& c = r.cover;
  const std::size_t k = c.base.orbits.size();
  std::vector<std::vector<Perm>> kernels(k);
  for (std::size_t i = 0; i < k; ++i) kernels[i] = elements(r.n_groups[i], caps);
  const auto h_elements = elements(r.h_group, caps);

  Q sum = 0;
  for (const auto& h : h_elements) {
    std::vector<Component> components;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& size = c.base.orbits[i].size;
      Component comp{size.is_infinite() ? 0 : size.size(), std::vector<Q>(n + 1)};
      const std::size_t offset = c.label_offset(i), f = c.fiber_size(i);
      // A block of size b in a fiber acted on by sigma keeps its labels iff
      // they are fixed points of sigma; average over the coset h_i N_i.
      std::vector<BigInt> over_coset(n + 1);
      for (const auto& nu : kernels[i]) {
        std::size_t fixed = 0;
        for (std::size_t x = 0; x < f; ++x) {
          const Point hx = h[static_cast<Point>(offset + x)] - static_cast<Point>(offset);
          fixed += nu[hx] == x;
        }
        for (unsigned b = 1; b <= n; ++b) over_coset[b] += falling_factorial(fixed, b);
      }
      for (unsigned b = 1; b <= n; ++b) comp.weight[b] = Q(over_coset[b], BigInt(kernels[i].size()));
      components.push_back(std::move(comp));
    }
    sum += labelled_total(components, n);
  }
  return exact_quotient(sum, h_elements.size(), "H");
}

CoveringReduct as_trivial_cover(const UnaryStructure& u) {
  FiberedStructure c{u, std::vector<std::vector<std::string>>(u.orbits.size(), {"*"})};
  CoveringReduct r{std::move(c), PermGroup::trivial(u.orbits.size()), {}};
  r.n_groups.assign(u.orbits.size(), PermGroup::trivial(1));
  return r;
}

CoveringReduct with_trivial_groups(const FiberedStructure& c) {
  CoveringReduct r{c, PermGroup::trivial(c.label_count()), {}};
  for (std::size_t i = 0; i < c.base.orbits.size(); ++i) r.n_groups.push_back(PermGroup::trivial(c.fiber_size(i)));
  return r;
}

}  // namespace

BigInt count_injective_orbits(const StructureDescription& s, unsigned n, const Caps& caps) {
  require_valid(s);
  if (n > caps.count_cap) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds count_cap = " + std::to_string(caps.count_cap));
  }
  if (const auto* u = std::get_if<UnaryStructure>(&s)) return count_cover(as_trivial_cover(*u), n, caps);
  if (const auto* r = std::get_if<ReductOfUnary>(&s)) return count_reduct(*r, n, caps);
  if (const auto* c = std::get_if<FiberedStructure>(&s)) return count_cover(with_trivial_groups(*c), n, caps);
  return count_cover(std::get<CoveringReduct>(s), n, caps);
}

BigInt count_orbits(const StructureDescription& s, unsigned n, const Caps& caps) {
  BigInt total = n == 0 ? 1 : 0;
  for (unsigned j = 1; j <= n; ++j) total += partitions::stirling2(n, j) * count_injective_orbits(s, j, caps);
  return total;
}

OrbitCountSequence orbit_sequence(const StructureDescription& s, unsigned n_max, OrbitKind kind, const Caps& caps) {
  OrbitCountSequence seq;
  std::vector<BigInt> injective;
  for (unsigned n = 1; n <= n_max; ++n) {
    injective.push_back(count_injective_orbits(s, n, caps));
    BigInt count = injective.back();
    if (kind == OrbitKind::all) {
      count = 0;
      for (unsigned j = 1; j <= n; ++j) count += partitions::stirling2(n, j) * injective[j - 1];
    }
    seq.entries.push_back({n, std::move(count)});
  }
  return seq;
}

std::vector<std::size_t> truncation_sizes(const StructureDescription& s, unsigned n, unsigned extra) {
  require_valid(s);
  const auto& base = base_of(s);
  const std::size_t wanted = std::max(2U * n, 2U) + extra;
  std::vector<std::size_t> sizes(base.orbits.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& size = base.orbits[i].size;
    sizes[i] = size.is_infinite() ? wanted : size.size();
  }
  const auto* r = std::get_if<ReductOfUnary>(&s);
  if (!r) return sizes;

  // Classes the action relates must get equal totals, so every infinite
  // class gets the same total, with room for its finite members.
  std::size_t largest_finite = 0, most_infinite = 0;
  for (const auto& cls : r->nabla.classes) {
    std::size_t finite = 0, infinite = 0;
    for (const auto& name : cls) {
      const auto& size = base.orbits[base.index_of(name)].size;
      size.is_infinite() ? ++infinite : finite += size.size();
    }
    if (infinite) {
      largest_finite = std::max(largest_finite, finite);
      most_infinite = std::max(most_infinite, infinite);
    }
  }
  const std::size_t total = std::max(wanted, most_infinite) + largest_finite;
  for (const auto& cls : r->nabla.classes) {
    std::vector<std::size_t> infinite_members;
    std::size_t finite = 0;
    for (const auto& name : cls) {
      const std::size_t i = base.index_of(name);
      base.orbits[i].size.is_infinite() ? infinite_members.push_back(i) : void(finite += sizes[i]);
    }
    if (infinite_members.empty()) continue;
    const std::size_t share = total - finite;
    for (std::size_t t = 0; t < infinite_members.size(); ++t) {
      sizes[infinite_members[t]] = share / infinite_members.size() + (t < share % infinite_members.size() ? 1 : 0);
    }
  }
  return sizes;
}

BigInt count_injective_orbits_truncated(const StructureDescription& s, unsigned n, std::span<const std::size_t> sizes,
                                        const Caps& caps) {
  const Truncation t = truncate(s, sizes);
  if (n > t.group.degree()) return 0;
  return orbit_count_injective(t.group, n, caps);
}

CrosscheckReport crosscheck(const StructureDescription& s, unsigned n, unsigned margin, const Caps& caps) {
  CrosscheckReport report;
  report.n = n;
  report.symbolic = count_injective_orbits(s, n, caps);
  report.small_sizes = truncation_sizes(s, n);
  report.large_sizes = truncation_sizes(s, n, margin);
  report.small_count = count_injective_orbits_truncated(s, n, report.small_sizes, caps);
  report.large_count = count_injective_orbits_truncated(s, n, report.large_sizes, caps);
  return report;
}

}  // namespace orbitforge
