#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbitforge/errors.hpp"
#include "orbitforge/growth.hpp"
#include "orbitforge/io.hpp"
#include "orbitforge/orbits.hpp"
#include "orbitforge/partitions.hpp"
#include "orbitforge/reducts.hpp"

using namespace orbitforge;
using io::Json;

namespace {

struct Options {
  std::string input, out, group, sequence_file, format = "table", kind = "injective", sizes;
  unsigned k = 2, n = 1, n_max = 8, margin = 1;
  std::string eps, d;
  std::vector<std::string> checks;
  bool brute = false, count_only = false, emit_group = false;
  std::optional<std::uint64_t> order_cap, work_cap;
};

std::vector<std::size_t> parse_sizes(const std::string& text, const UnaryStructure& base) {
  std::vector<std::optional<std::size_t>> given(base.orbits.size());
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--sizes entries must look like orbit=count, got '" + item + "'");
    const std::size_t i = base.index_of(item.substr(0, eq));
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      given[i] = std::stoul(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ValidationError("--sizes value for '" + item.substr(0, eq) + "' is not a non-negative integer");
    }
  }
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < given.size(); ++i) {
    const auto& size = base.orbits[i].size;
    if (given[i]) {
      sizes.push_back(*given[i]);
    } else if (size.is_finite()) {
      sizes.push_back(size.size());
    } else {
      throw ValidationError("--sizes gives no size for infinite orbit '" + base.orbits[i].name + "'");
    }
  }
  return sizes;
}

StructureDescription load(const Options& o) {
  if (o.input.empty()) throw ValidationError("--input is required");
  return io::read_structure_file(o.input);
}

StructureDescription load_valid(const Options& o) {
  auto s = load(o);
  require_valid(s);
  return s;
}

OrbitKind parse_kind(const std::string& kind) {
  if (kind == "injective") return OrbitKind::injective;
  if (kind == "all") return OrbitKind::all;
  throw ValidationError("--kind must be injective or all");
}

void print_sequence(const OrbitCountSequence& seq, const std::string& format) {
  if (format == "csv") {
    io::write_sequence_csv(std::cout, seq);
  } else if (format == "json") {
    Json doc = Json::array();
    for (const auto& e : seq.entries) doc.push_back({{"n", e.n}, {"count", to_string(e.count)}});
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << std::setw(4) << "n" << "  count\n";
    for (const auto& e : seq.entries) std::cout << std::setw(4) << e.n << "  " << e.count << '\n';
  }
}

// Estimates are multiples of 1e-6.
std::string micro(const Rational& r) {
  const std::int64_t units = r.num() * (1'000'000 / r.den());
  std::ostringstream out;
  out << units / 1'000'000 << '.' << std::setw(6) << std::setfill('0') << units % 1'000'000;
  return out.str();
}

std::string verdict(bool holds) { return holds ? "holds" : "fails"; }

int run_pk(const Options& o, const Caps& caps) {
  std::cout << (o.brute ? partitions::bounded_block_partitions_bruteforce(o.k, o.n, caps)
                        : partitions::bounded_block_partitions(o.k, o.n))
            << '\n';
  return 0;
}

int run_sk(const Options& o) {
  std::cout << partitions::uniform_block_partitions(o.k, o.n) << '\n';
  return 0;
}

int run_bounds_lower(const Options& o) {
  const Rational eps = Rational::parse(o.eps);
  std::cout << "# p_k(n) >= n^{qn}, k=" << o.k << ", eps=" << eps.str() << '\n';
  for (unsigned n = 1; n <= o.n_max; ++n) {
    std::cout << n << ' ' << verdict(partitions::check_lower_bound(o.k, eps, n)) << '\n';
  }
  const auto onset = partitions::lower_bound_onset(o.k, eps, o.n_max);
  std::cout << "onset " << (onset ? std::to_string(*onset) : std::string("none")) << '\n';
  return 0;
}

int run_bounds_upper(const Options& o, const Caps& caps) {
  const Rational d = Rational::parse(o.d);
  std::cout << "# termwise check, k=" << o.k << ", d=" << d.str() << '\n';
  for (unsigned n = 1; n <= o.n_max; ++n) {
    std::cout << n << ' ' << verdict(partitions::check_upper_bound_termwise(o.k, d, n)) << '\n';
  }
  const auto c = partitions::find_upper_constant(o.k, d, o.n_max, caps);
  std::cout << "termwise_onset " << c.termwise_onset << '\n';
  std::cout << "c " << c.c.str() << '\n';
  return 0;
}

int run_count(const Options& o, const Caps& caps) {
  const auto s = load_valid(o);
  const auto kind = parse_kind(o.kind);
  std::cout << (kind == OrbitKind::all ? count_orbits(s, o.n, caps) : count_injective_orbits(s, o.n, caps)) << '\n';
  return 0;
}

int run_sequence(const Options& o, const Caps& caps) {
  const auto s = load_valid(o);
  print_sequence(orbit_sequence(s, o.n_max, parse_kind(o.kind), caps), o.format);
  return 0;
}

int run_reducts(const Options& o, const Caps& caps, bool covering) {
  const auto s = load_valid(o);
  std::vector<StructureDescription> found;
  if (covering) {
    const auto* c = std::get_if<FiberedStructure>(&s);
    if (!c) throw ValidationError("cover-reducts needs a trivial_cover input");
    if (o.count_only) {
      std::cout << count_covering_reducts(*c, caps) << '\n';
      return 0;
    }
    for (auto& r : enumerate_covering_reducts(*c, caps)) found.emplace_back(std::move(r));
  } else {
    found = reducts_of(s, caps);
    if (o.count_only) {
      std::cout << found.size() << '\n';
      return 0;
    }
  }
  for (const auto& r : found) std::cout << io::structure_to_json(r).dump() << '\n';
  return 0;
}

int run_truncate(const Options& o) {
  const auto s = load_valid(o);
  const auto sizes = parse_sizes(o.sizes, base_of(s));
  const Truncation t = truncate(s, sizes);
  if (o.emit_group) {
    std::cout << io::truncation_to_json(t, base_of(s)).dump(2) << '\n';
    return 0;
  }
  std::cout << "degree " << t.group.degree() << '\n';
  std::cout << "generators " << t.group.generators().size() << '\n';
  std::cout << "order " << order(t.group) << '\n';
  return 0;
}

int run_group_orbits(const Options& o, const Caps& caps) {
  if (o.group.empty()) throw ValidationError("--group is required");
  const PermGroup g = io::read_group_file(o.group);
  if (o.kind == "injective") {
    std::cout << orbit_count_injective(g, o.n, caps) << '\n';
  } else if (o.kind == "all") {
    std::cout << orbit_count_tuples(g, o.n, caps) << '\n';
  } else if (o.kind == "subsets") {
    std::cout << orbit_count_subsets(g, o.n, caps) << '\n';
  } else {
    throw ValidationError("--kind must be injective, all or subsets");
  }
  return 0;
}

std::string join(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (auto x : sizes) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

int run_crosscheck(const Options& o, const Caps& caps) {
  const auto s = load_valid(o);
  const auto r = crosscheck(s, o.n, o.margin, caps);
  std::cout << "n " << r.n << '\n';
  std::cout << "symbolic " << r.symbolic << '\n';
  std::cout << "truncated " << r.small_count << " sizes " << join(r.small_sizes) << '\n';
  std::cout << "truncated " << r.large_count << " sizes " << join(r.large_sizes) << '\n';
  std::cout << "stabilized " << (r.stabilized() ? "yes" : "no") << '\n';
  std::cout << "agrees " << (r.agrees() ? "yes" : "no") << '\n';
  return r.agrees() ? 0 : 1;
}

int run_classify(const Options& o, const Caps& caps) {
  OrbitCountSequence seq;
  if (!o.sequence_file.empty()) {
    seq = io::read_sequence_csv_file(o.sequence_file);
  } else {
    seq = orbit_sequence(load_valid(o), o.n_max, parse_kind(o.kind), caps);
  }
  std::vector<std::pair<BigInt, Rational>> check;
  for (const auto& text : o.checks) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ValidationError("--check takes c,d, got '" + text + "'");
    try {
      check.emplace_back(BigInt(text.substr(0, comma)), Rational::parse(text.substr(comma + 1)));
    } catch (const std::runtime_error&) {
      throw ValidationError("--check takes c,d, got '" + text + "'");
    }
  }
  const auto report = growth::classify(seq, check);
  std::cout << "label " << report.label << " (heuristic)\n";
  if (report.exp_witness) std::cout << "exp_witness c=" << *report.exp_witness << '\n';
  if (report.ndn_witness) {
    std::cout << "ndn_witness c=" << report.ndn_witness->c << " d=" << report.ndn_witness->d.str() << '\n';
  }
  for (const auto& v : report.verdicts) {
    std::cout << "check c=" << v.c << " d=" << v.d.str() << ' ' << verdict(v.holds) << '\n';
  }
  for (const auto& e : report.exponents) {
    std::cout << "d_" << e.n << " in [" << micro(e.lower) << ", " << micro(e.upper) << "]\n";
  }
  return 0;
}

int run_split(const Options& o) {
  if (o.out.empty()) throw ValidationError("--out is required");
  io::write_json_file(o.out, io::structure_to_json(split_finite_orbits(load_valid(o))));
  return 0;
}

int run_validate(const Options& o) {
  const auto problems = validate(load(o));
  if (problems.empty()) {
    std::cout << "valid\n";
    return 0;
  }
  for (const auto& p : problems) std::cerr << "invalid: " << p << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit counts, reducts and growth checks for unary structures and their covers"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--order-cap", o.order_cap, "largest group order to materialize (default 1000000)");
  app.add_option("--work-cap", o.work_cap, "largest number of enumerated tuples or nodes (default 10000000)");

  auto* pk = app.add_subcommand("pk", "partitions of an n-set with blocks of size <= k");
  pk->add_option("--k", o.k)->required();
  pk->add_option("--n", o.n)->required();
  pk->add_flag("--brute", o.brute, "enumerate every set partition instead");

  auto* sk = app.add_subcommand("sk", "partitions of a kn-set into blocks of size exactly k");
  sk->add_option("--k", o.k)->required();
  sk->add_option("--n", o.n)->required();

  auto* bounds = app.add_subcommand("bounds", "exact verdict tables for the growth inequalities of p_k");
  bounds->require_subcommand(1);
  auto* lower = bounds->add_subcommand("lower", "p_k(n) >= n^{((k-1)/k - eps) n}");
  lower->add_option("--k", o.k)->required();
  lower->add_option("--eps", o.eps)->required();
  lower->add_option("--n-max", o.n_max)->required();
  auto* upper = bounds->add_subcommand("upper", "termwise recursion check and constant c with p_k(n) < c n^{dn}");
  upper->add_option("--k", o.k)->required();
  upper->add_option("--d", o.d)->required();
  upper->add_option("--n-max", o.n_max)->required();

  auto* count = app.add_subcommand("count", "orbits on n-tuples");
  count->add_option("--input", o.input)->required();
  count->add_option("--n", o.n)->required();
  count->add_option("--kind", o.kind, "injective or all")->capture_default_str();

  auto* sequence = app.add_subcommand("sequence", "orbit counts for n = 1..n-max");
  sequence->add_option("--input", o.input)->required();
  sequence->add_option("--n-max", o.n_max)->required();
  sequence->add_option("--format", o.format)->check(CLI::IsMember({"table", "csv", "json"}))->capture_default_str();
  sequence->add_option("--kind", o.kind, "injective or all")->capture_default_str();

  auto* reducts = app.add_subcommand("reducts", "reducts of a unary structure or cover, one JSON line each");
  reducts->add_option("--input", o.input)->required();
  reducts->add_flag("--count-only", o.count_only);

  auto* covers = app.add_subcommand("cover-reducts", "covering reducts of a trivial cover, one JSON line each");
  covers->add_option("--input", o.input)->required();
  covers->add_flag("--count-only", o.count_only);

  auto* trunc = app.add_subcommand("truncate", "finite truncation with the given base sizes");
  trunc->add_option("--input", o.input)->required();
  trunc->add_option("--sizes", o.sizes, "orbit=count,...; finite orbits default to their size")->required();
  trunc->add_flag("--emit-group", o.emit_group, "print the group as JSON");

  auto* group_orbits = app.add_subcommand("group-orbits", "orbit counts of a group read from JSON");
  group_orbits->add_option("--group", o.group)->required();
  group_orbits->add_option("--n", o.n)->required();
  group_orbits->add_option("--kind", o.kind, "injective, all or subsets")->capture_default_str();

  auto* cross = app.add_subcommand("crosscheck", "symbolic count against two truncations");
  cross->add_option("--input", o.input)->required();
  cross->add_option("--n", o.n)->required();
  cross->add_option("--margin", o.margin)->capture_default_str();

  auto* classify = app.add_subcommand("classify", "growth label and exact bound checks");
  auto* from_input = classify->add_option("--input", o.input);
  classify->add_option("--n-max", o.n_max)->needs(from_input);
  classify->add_option("--kind", o.kind)->capture_default_str();
  auto* from_csv = classify->add_option("--sequence-file", o.sequence_file, "CSV with columns n,count");
  from_input->excludes(from_csv);
  classify->add_option("--check", o.checks, "c,d: also check count <= c n^{dn}");

  auto* split = app.add_subcommand("split-orbits", "replace finite orbits by infinite ones");
  split->add_option("--input", o.input)->required();
  split->add_option("--out", o.out)->required();

  auto* validate_cmd = app.add_subcommand("validate", "check a structure file");
  validate_cmd->add_option("--input", o.input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Caps caps;
    if (const char* env = std::getenv("ORBITFORGE_CAPS")) caps.apply_overrides(env);
    if (o.order_cap) caps.order_cap = *o.order_cap;
    if (o.work_cap) caps.work_cap = *o.work_cap;

    if (*pk) return run_pk(o, caps);
    if (*sk) return run_sk(o);
    if (*lower) return run_bounds_lower(o);
    if (*upper) return run_bounds_upper(o, caps);
    if (*count) return run_count(o, caps);
    if (*sequence) return run_sequence(o, caps);
    if (*reducts) return run_reducts(o, caps, false);
    if (*covers) return run_reducts(o, caps, true);
    if (*trunc) return run_truncate(o);
    if (*group_orbits) return run_group_orbits(o, caps);
    if (*cross) return run_crosscheck(o, caps);
    if (*classify) {
      if (o.input.empty() && o.sequence_file.empty()) throw ValidationError("classify needs --input or --sequence-file");
      return run_classify(o, caps);
    }
    if (*split) return run_split(o);
    if (*validate_cmd) return run_validate(o);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
