#include "orbitforge/io.hpp"

#include <algorithm>
#include <fstream>

#include "orbitforge/errors.hpp"

namespace orbitforge::io {

namespace {

const char* const kinds[] = {"unary", "reduct_of_unary", "trivial_cover", "covering_reduct"};

void allow_only(const Json& object, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!object.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ValidationError("unknown field '" + key + "' in " + where);
    }
  }
}

const Json& required(const Json& object, const char* key, const std::string& where) {
  if (!object.contains(key)) throw ValidationError("missing field '" + std::string(key) + "' in " + where);
  return object.at(key);
}

std::string string_value(const Json& value, const std::string& what) {
  if (!value.is_string()) throw ValidationError(what + " must be a string");
  return value.get<std::string>();
}

const Json& array_value(const Json& value, const std::string& what) {
  if (!value.is_array()) throw ValidationError(what + " must be an array");
  return value;
}

std::uint64_t unsigned_value(const Json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ValidationError(what + " must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

Cardinal parse_cardinal(const Json& value, const std::string& orbit) {
  if (value.is_string() && value.get<std::string>() == "inf") return Cardinal::infinite();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 1) return Cardinal::finite(value.get<std::uint64_t>());
  throw ValidationError("size of orbit '" + orbit + "' must be a positive integer or \"inf\"");
}

UnaryStructure parse_orbits(const Json& doc) {
  UnaryStructure u;
  for (const auto& entry : array_value(required(doc, "orbits", "structure file"), "orbits")) {
    allow_only(entry, {"name", "size"}, "orbit entry");
    const std::string name = string_value(required(entry, "name", "orbit entry"), "orbit name");
    u.orbits.push_back({name, parse_cardinal(required(entry, "size", "orbit '" + name + "'"), name)});
  }
  return u;
}

// Fiber labels in orbit order.
std::vector<std::vector<std::string>> parse_fibers(const Json& doc, const UnaryStructure& base) {
  const Json& fibers = required(doc, "fibers", "structure file");
  if (!fibers.is_object()) throw ValidationError("fibers must map orbit names to label lists");
  std::vector<std::vector<std::string>> out(base.orbits.size());
  std::vector<bool> seen(base.orbits.size(), false);
  for (const auto& [name, labels] : fibers.items()) {
    const std::size_t i = base.index_of(name);
    for (const auto& label : array_value(labels, "fiber labels of '" + name + "'")) {
      out[i].push_back(string_value(label, "fiber label"));
    }
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError("missing fiber labels for orbit '" + base.orbits[i].name + "'");
  }
  return out;
}

void forbid(const Json& doc, std::initializer_list<const char*> fields, const std::string& kind) {
  for (const char* f : fields) {
    if (doc.contains(f)) throw ValidationError("field '" + std::string(f) + "' does not apply to kind '" + kind + "'");
  }
}

}  // namespace

Json perm_to_json(const Perm& p) {
  Json out = Json::array();
  for (auto x : p.images()) out.push_back(x);
  return out;
}

Perm parse_perm(const Json& value, std::size_t degree) {
  array_value(value, "permutation");
  std::vector<Point> images;
  for (const auto& x : value) images.push_back(static_cast<Point>(unsigned_value(x, "permutation entry")));
  if (images.size() != degree) {
    throw ValidationError("permutation " + value.dump() + " should have " + std::to_string(degree) + " entries");
  }
  return Perm(std::move(images));
}

StructureDescription parse_structure(const Json& doc) {
  allow_only(doc,
             {"version", "kind", "orbits", "classes", "action_generators", "fibers", "h_generators", "n_generators"},
             "structure file");
  if (unsigned_value(required(doc, "version", "structure file"), "version") != 1) {
    throw ValidationError("unsupported version " + doc.at("version").dump() + "; expected 1");
  }
  const std::string kind = string_value(required(doc, "kind", "structure file"), "kind");
  if (std::find(std::begin(kinds), std::end(kinds), kind) == std::end(kinds)) {
    throw ValidationError("unknown kind '" + kind + "'");
  }
  UnaryStructure base = parse_orbits(doc);

  if (kind == "unary") {
    forbid(doc, {"classes", "action_generators", "fibers", "h_generators", "n_generators"}, kind);
    return base;
  }
  if (kind == "reduct_of_unary") {
    forbid(doc, {"fibers", "h_generators", "n_generators"}, kind);
    ClassPartition classes;
    for (const auto& cls : array_value(required(doc, "classes", "structure file"), "classes")) {
      std::vector<std::string> names;
      for (const auto& name : array_value(cls, "class")) names.push_back(string_value(name, "class member"));
      classes.classes.push_back(std::move(names));
    }
    std::vector<Perm> gens;
    if (doc.contains("action_generators")) {
      for (const auto& g : array_value(doc.at("action_generators"), "action_generators")) {
        gens.push_back(parse_perm(g, classes.classes.size()));
      }
    }
    const std::size_t degree = classes.classes.size();
    return ReductOfUnary{std::move(base), std::move(classes), PermGroup(degree, std::move(gens))};
  }

  forbid(doc, {"classes", "action_generators"}, kind);
  FiberedStructure cover{base, parse_fibers(doc, base)};
  if (kind == "trivial_cover") {
    forbid(doc, {"h_generators", "n_generators"}, kind);
    return cover;
  }

  const std::size_t k = base.orbits.size();
  std::vector<Perm> h_gens;
  if (doc.contains("h_generators")) {
    for (const auto& entry : array_value(doc.at("h_generators"), "h_generators")) {
      if (!entry.is_object()) throw ValidationError("each H generator must map orbit names to permutations");
      std::vector<Point> images(cover.label_count());
      for (std::size_t x = 0; x < images.size(); ++x) images[x] = static_cast<Point>(x);
      for (const auto& [name, perm] : entry.items()) {
        const std::size_t i = base.index_of(name);
        const Perm part = parse_perm(perm, cover.fiber_size(i));
        const auto offset = static_cast<Point>(cover.label_offset(i));
        for (std::size_t f = 0; f < part.degree(); ++f) images[offset + f] = offset + part[static_cast<Point>(f)];
      }
      h_gens.emplace_back(std::move(images));
    }
  }
  std::vector<std::vector<Perm>> n_gens(k);
  if (doc.contains("n_generators")) {
    const Json& n = doc.at("n_generators");
    if (!n.is_object()) throw ValidationError("n_generators must map orbit names to permutation lists");
    for (const auto& [name, perms] : n.items()) {
      const std::size_t i = base.index_of(name);
      for (const auto& perm : array_value(perms, "n_generators of '" + name + "'")) {
        n_gens[i].push_back(parse_perm(perm, cover.fiber_size(i)));
      }
    }
  }
  CoveringReduct r{cover, PermGroup(cover.label_count(), std::move(h_gens)), {}};
  for (std::size_t i = 0; i < k; ++i) r.n_groups.emplace_back(cover.fiber_size(i), std::move(n_gens[i]));
  return r;
}

StructureDescription read_structure_file(const std::string& path) { return parse_structure(read_json_file(path)); }

Json structure_to_json(const StructureDescription& s) {
  const auto& base = base_of(s);
  Json doc;
  doc["version"] = 1;
  doc["kind"] = kinds[s.index()];
  Json orbits = Json::array();
  for (const auto& o : base.orbits) {
    Json entry;
    entry["name"] = o.name;
    if (o.size.is_infinite()) {
      entry["size"] = "inf";
    } else {
      entry["size"] = o.size.size();
    }
    orbits.push_back(std::move(entry));
  }
  doc["orbits"] = std::move(orbits);

  if (const auto* r = std::get_if<ReductOfUnary>(&s)) {
    doc["classes"] = r->nabla.classes;
    Json gens = Json::array();
    for (const auto& a : r->action.generators()) gens.push_back(perm_to_json(a));
    doc["action_generators"] = std::move(gens);
    return doc;
  }
  const FiberedStructure* cover = std::get_if<FiberedStructure>(&s);
  const auto* cr = std::get_if<CoveringReduct>(&s);
  if (cr) cover = &cr->cover;
  if (!cover) return doc;

  Json fibers = Json::object();
  for (std::size_t i = 0; i < base.orbits.size(); ++i) fibers[base.orbits[i].name] = cover->fibers[i];
  doc["fibers"] = std::move(fibers);
  if (!cr) return doc;

  Json h = Json::array();
  for (const auto& g : cr->h_group.generators()) {
    Json entry = Json::object();
    for (std::size_t i = 0; i < base.orbits.size(); ++i) {
      std::vector<Point> part;
      const auto offset = static_cast<Point>(cover->label_offset(i));
      for (std::size_t f = 0; f < cover->fiber_size(i); ++f) part.push_back(g[static_cast<Point>(offset + f)] - offset);
      entry[base.orbits[i].name] = part;
    }
    h.push_back(std::move(entry));
  }
  doc["h_generators"] = std::move(h);
  Json n = Json::object();
  for (std::size_t i = 0; i < base.orbits.size(); ++i) {
    Json perms = Json::array();
    for (const auto& nu : cr->n_groups[i].generators()) perms.push_back(perm_to_json(nu));
    n[base.orbits[i].name] = std::move(perms);
  }
  doc["n_generators"] = std::move(n);
  return doc;
}

Json group_to_json(const PermGroup& g) {
  Json doc;
  doc["degree"] = g.degree();
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back(perm_to_json(x));
  doc["generators"] = std::move(gens);
  return doc;
}

Json truncation_to_json(const Truncation& t, const UnaryStructure& base) {
  Json doc = group_to_json(t.group);
  Json points = Json::array();
  for (const auto& label : t.point_labels) {
    Json entry;
    entry["orbit"] = label.orbit;
    entry["label"] = label.fiber_label;
    entry["base_index"] = label.base_index;
    points.push_back(std::move(entry));
  }
  doc["points"] = std::move(points);
  Json sizes = Json::object();
  for (std::size_t i = 0; i < base.orbits.size(); ++i) sizes[base.orbits[i].name] = t.base_sizes[i];
  doc["base_sizes"] = std::move(sizes);
  return doc;
}

PermGroup parse_group(const Json& doc) {
  allow_only(doc, {"degree", "generators", "points", "base_sizes"}, "group file");
  const auto degree = static_cast<std::size_t>(unsigned_value(required(doc, "degree", "group file"), "degree"));
  std::vector<Perm> gens;
  for (const auto& g : array_value(required(doc, "generators", "group file"), "generators")) {
    gens.push_back(parse_perm(g, degree));
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup read_group_file(const std::string& path) { return parse_group(read_json_file(path)); }

OrbitCountSequence read_sequence_csv(std::istream& in) {
  OrbitCountSequence seq;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line == "n,count") {
      first = false;
      continue;
    }
    first = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("CSV line '" + line + "' is not of the form n,count");
    try {
      const std::string n_text = line.substr(0, comma), count_text = line.substr(comma + 1);
      if (n_text.empty() || count_text.empty() ||
          n_text.find_first_not_of("0123456789") != std::string::npos ||
          count_text.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("digits");
      }
      const auto n = static_cast<unsigned>(std::stoul(n_text));
      if (!seq.entries.empty() && n <= seq.entries.back().n) {
        throw ValidationError("CSV values of n must be strictly increasing");
      }
      seq.entries.push_back({n, BigInt(count_text)});
    } catch (const std::invalid_argument&) {
      throw ValidationError("CSV line '" + line + "' is not of the form n,count");
    } catch (const std::out_of_range&) {
      throw ValidationError("CSV line '" + line + "' is out of range");
    }
  }
  return seq;
}

OrbitCountSequence read_sequence_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_sequence_csv(in);
}

void write_sequence_csv(std::ostream& out, const OrbitCountSequence& seq) {
  out << "n,count\n";
  for (const auto& e : seq.entries) out << e.n << ',' << e.count << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace orbitforge::io
