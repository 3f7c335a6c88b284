// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons,
// each with a wall-clock budget. Exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "orbitforge/errors.hpp"
#include "orbitforge/growth.hpp"
#include "orbitforge/io.hpp"
#include "orbitforge/orbits.hpp"
#include "orbitforge/partitions.hpp"
#include "orbitforge/reducts.hpp"

using namespace orbitforge;

namespace {

std::string data(const std::string& name) { return std::string(ORBITFORGE_DATA_DIR) + "/" + name; }

std::vector<std::pair<std::string, StructureDescription>> matrix() {
  return {
      {"[inf]", io::read_structure_file(data("unary_inf.json"))},
      {"[inf,inf] swap", io::read_structure_file(data("swap_reduct.json"))},
      {"[inf,1]", io::read_structure_file(data("unary_inf_1.json"))},
      {"fibers [2]", io::read_structure_file(data("cover_2.json"))},
      {"fibers [2] H=S2 N=1", io::read_structure_file(data("cover_2_flip.json"))},
      {"fibers [2] H=N=S2", io::read_structure_file(data("cover_2_wreath.json"))},
  };
}

UnaryStructure infinite_orbits(std::size_t count) {
  UnaryStructure u;
  for (std::size_t i = 0; i < count; ++i) u.orbits.push_back({"O" + std::to_string(i + 1), Cardinal::infinite()});
  return u;
}

FiberedStructure one_label_set(const std::vector<std::size_t>& fiber_sizes) {
  FiberedStructure c{infinite_orbits(fiber_sizes.size()), {}};
  for (auto f : fiber_sizes) {
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < f; ++x) labels.push_back(std::string(1, static_cast<char>('a' + x)));
    c.fibers.push_back(labels);
  }
  return c;
}

// Details collected while checking; printed under the verdict line.
struct Notes {
  std::ostringstream out;
  bool ok = true;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      out << "    failed: " << what << '\n';
    }
  }
  void info(const std::string& line) { out << "    " << line << '\n'; }
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Notes&)> check;
};

std::string fraction(const Rational& r) { return r.str(); }

void partition_oracles(Notes& notes) {
  for (unsigned k = 1; k <= 5; ++k) {
    for (unsigned n = 0; n <= 12; ++n) {
      notes.require(partitions::bounded_block_partitions(k, n) == partitions::bounded_block_partitions_bruteforce(k, n),
                    "p_" + std::to_string(k) + "(" + std::to_string(n) + ")");
    }
  }
  for (unsigned k = 2; k <= 5; ++k) {
    for (unsigned n = 0; n <= 6; ++n) {
      notes.require(partitions::uniform_block_partitions(k, n) == partitions::uniform_block_partitions_closed_form(k, n),
                    "s_" + std::to_string(k) + "(" + std::to_string(n) + ")");
    }
  }
}

void lower_bounds(Notes& notes) {
  const std::pair<unsigned, Rational> cases[] = {{2, Rational(1, 4)}, {3, Rational(1, 6)}, {4, Rational(1, 8)}};
  for (const auto& [k, eps] : cases) {
    const auto onset = partitions::lower_bound_onset(k, eps, 256);
    const std::string label = "k=" + std::to_string(k) + " eps=" + fraction(eps);
    notes.info(label + ": onset " + (onset ? std::to_string(*onset) : std::string("none up to 256")));
    notes.require(onset && *onset <= 128, label + " needs an onset <= 128");
    if (!onset) continue;
    for (unsigned n = *onset; n <= 256; ++n) {
      notes.require(partitions::check_lower_bound(k, eps, n), label + " n=" + std::to_string(n));
    }
  }
}

void upper_bounds(Notes& notes) {
  const std::pair<unsigned, Rational> cases[] = {{2, Rational(3, 4)}, {3, Rational(9, 10)}};
  for (const auto& [k, d] : cases) {
    const std::string label = "k=" + std::to_string(k) + " d=" + fraction(d);
    const unsigned onset = partitions::find_upper_constant(k, d, 512).termwise_onset;
    for (unsigned n = onset + 1; n <= 512; ++n) {
      notes.require(partitions::check_upper_bound_termwise(k, d, n), label + " termwise n=" + std::to_string(n));
    }
    const Rational c = partitions::find_upper_constant(k, d, 200).c;
    for (unsigned n = 1; n <= 200; ++n) {
      notes.require(partitions::below_c_n_pow_dn(partitions::bounded_block_partitions(k, n), c, d, n),
                    label + " c n^{dn} at n=" + std::to_string(n));
    }
    notes.info(label + ": termwise from n=" + std::to_string(onset + 1) + ", c=" + fraction(c));
  }
}

void wreath_cover(Notes& notes) {
  const auto s = io::read_structure_file(data("cover_2_wreath.json"));
  for (unsigned n = 1; n <= 6; ++n) {
    const BigInt expected = partitions::bounded_block_partitions(2, n);
    const std::size_t sizes[] = {2 * n};
    notes.require(count_injective_orbits(s, n) == expected, "symbolic n=" + std::to_string(n));
    notes.require(count_injective_orbits_truncated(s, n, sizes) == expected, "truncation n=" + std::to_string(n));
  }
}

void symbolic_matrix(Notes& notes) {
  for (const auto& [name, s] : matrix()) {
    for (unsigned n = 1; n <= 4; ++n) {
      const auto r = crosscheck(s, n);
      notes.require(r.agrees() && r.stabilized(), name + " n=" + std::to_string(n));
    }
  }
}

void reduct_counts(Notes& notes) {
  UnaryStructure inf_1 = infinite_orbits(1);
  inf_1.orbits.push_back({"O2", Cardinal::finite(1)});
  notes.require(count_unary_reducts(infinite_orbits(1)) == 1, "[inf] -> 1");
  notes.require(count_unary_reducts(inf_1) == 2, "[inf,1] -> 2");
  notes.require(count_unary_reducts(infinite_orbits(2)) == 3, "[inf,inf] -> 3");
  notes.require(count_unary_reducts(infinite_orbits(3)) == 13, "[inf,inf,inf] -> 13");
  const PermGroup s3s3[] = {PermGroup::symmetric(3), PermGroup::symmetric(3)};
  notes.require(subgroups_above(direct_product(s3s3), PermGroup::symmetric(6)).size() == 3,
                "three groups between Sym(3)xSym(3) and Sym(6)");
}

void covering_counts(Notes& notes) {
  notes.require(count_covering_reducts(one_label_set({2})) == 3, "fibers [2] -> 3");
  notes.require(count_covering_reducts(one_label_set({3})) == 12, "fibers [3] -> 12");
  notes.require(count_covering_reducts(one_label_set({2, 2})) == 10, "fibers [2,2] -> 10");
  for (std::size_t f = 1; f <= 3; ++f) {
    std::size_t expected = 0;
    for (const auto& h : all_subgroups(PermGroup::symmetric(f))) expected += normal_subgroups(h.group).size();
    notes.require(count_covering_reducts(one_label_set({f})) == expected,
                  "fibers [" + std::to_string(f) + "] against normal subgroup count");
  }
}

// Point orbits of the trivial cover underneath s.
std::size_t cover_point_orbits(const StructureDescription& s) {
  const auto* c = std::get_if<FiberedStructure>(&s);
  const auto* r = std::get_if<CoveringReduct>(&s);
  if (!c && !r) return base_of(s).orbits.size();
  const StructureDescription cover = c ? *c : r->cover;
  const auto sizes = truncation_sizes(cover, 1);
  return point_orbits(truncate(cover, sizes).group).size();
}

void monotonicity(Notes& notes) {
  for (const auto& [name, s] : matrix()) {
    for (const auto& r : reducts_of(s)) {
      for (unsigned n = 1; n <= 4; ++n) {
        notes.require(count_injective_orbits(r, n) <= count_injective_orbits(s, n),
                      name + ": reduct above s at n=" + std::to_string(n));
      }
    }
    const auto [k, m] = skm_parameters(s);
    const auto m_cover = cover_point_orbits(s);
    bool cover_bound = true;
    std::string first_excess;
    for (unsigned n = 1; n <= 8; ++n) {
      const BigInt count = count_injective_orbits(s, n);
      const BigInt pk = partitions::bounded_block_partitions(k, n);
      const BigInt bound = pow(BigInt(m), n) * pk;
      if (count > bound && first_excess.empty()) {
        first_excess = "o^i_" + std::to_string(n) + " = " + to_string(count) + " > " + to_string(bound);
      }
      cover_bound = cover_bound && count <= pow(BigInt(m_cover), n) * pk;
    }
    notes.require(first_excess.empty(), name + " (k=" + std::to_string(k) + ", m=" + std::to_string(m) + "): " +
                                            first_excess);
    notes.info(name + ": with m = " + std::to_string(m_cover) + " point orbits of the trivial cover, the bound " +
               (cover_bound ? "holds" : "fails"));
  }
}

void congruences(Notes& notes) {
  for (const auto& [name, s] : matrix()) {
    if (!std::holds_alternative<FiberedStructure>(s) && !std::holds_alternative<CoveringReduct>(s)) continue;
    for (unsigned n = 1; n <= 3; ++n) {
      const auto sizes = truncation_sizes(s, n);
      const auto t = truncate(s, sizes);
      notes.require(preserves(t.group, restrict_to(delta(s), s, t)), name + ": fiber partition not invariant");
      const PermGroup base = truncated_base_group(t);
      for (const auto& g : t.group.generators()) {
        notes.require(contains(base, induced_base_action(s, t, g)), name + ": induced action outside base group");
      }
    }
  }
}

void growth_labels(Notes& notes) {
  std::vector<StructureDescription> reducts;
  for (const auto& [name, s] : matrix()) {
    const auto seq = orbit_sequence(s, 8, OrbitKind::injective);
    const auto k = skm_parameters(s).k;
    const Rational d = Rational(k - 1, k) + Rational(1, 4 * k);
    bool found = false;
    for (unsigned c = 1; c <= 8 && !found; ++c) found = growth::verify_ndn_bound(seq, c, d);
    notes.require(found, name + ": no c <= 8 for d=" + fraction(d));
    if (std::holds_alternative<ReductOfUnary>(s)) reducts.push_back(s);
    if (std::holds_alternative<UnaryStructure>(s)) {
      for (const auto& r : reducts_of(s)) reducts.push_back(r);
    }
  }
  for (const auto& r : reducts) {
    const auto seq = orbit_sequence(r, 8, OrbitKind::injective);
    notes.require(growth::verify_exp_bound(seq, nabla_class_count(r)), "reduct exceeds (classes)^n");
  }

  const auto bell = io::read_sequence_csv_file(data("bell.csv"));
  for (const auto& d : growth::grid_exponents()) {
    for (unsigned c = 1; c <= growth::max_grid_c; ++c) {
      if (growth::verify_ndn_bound(bell, c, d)) {
        notes.require(false, "Bell numbers up to 12 satisfy c=" + std::to_string(c) + " d=" + fraction(d));
        notes.info("Bell label from classify: " + growth::classify(bell).label);
        return;
      }
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "partition counts match enumeration and closed form", 10, partition_oracles},
      {2, "lower bound p_k(n) >= n^{((k-1)/k - eps) n} from an onset <= 128", 60, lower_bounds},
      {3, "termwise upper recursion and constant c for p_k(n) < c n^{dn}", 60, upper_bounds},
      {4, "wreath cover counts equal p_2(n), symbolic and truncated", 120, wreath_cover},
      {5, "symbolic counts match stabilized truncations on the matrix", 300, symbolic_matrix},
      {6, "reduct counts of unary structures", 60, reduct_counts},
      {7, "covering reduct counts", 60, covering_counts},
      {8, "reducts have fewer orbits; o^i_n <= m^n p_k(n)", 120, monotonicity},
      {9, "fiber partition invariant and induced base action", 30, congruences},
      {10, "growth witnesses for the matrix; Bell numbers miss every grid witness", 30, growth_labels},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Notes notes;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.check(notes);
    } catch (const std::exception& e) {
      notes.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) notes.require(false, "over the time budget");
    const bool pass = notes.ok;
    failures += !pass;
    std::printf("%s %2d  %-70s %8.3fs (budget %.0fs)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
                c.budget_seconds);
    std::fputs(notes.out.str().c_str(), stdout);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
