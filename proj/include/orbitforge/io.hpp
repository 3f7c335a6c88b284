#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "orbitforge/orbits.hpp"
#include "orbitforge/structures.hpp"

// Structure files (JSON), group files (JSON) and sequences (CSV).
namespace orbitforge::io {

using Json = nlohmann::ordered_json;

/// Parses a structure file. Unknown or misplaced fields raise
/// ValidationError; the result is not validated.
StructureDescription parse_structure(const Json& doc);
StructureDescription read_structure_file(const std::string& path);
Json structure_to_json(const StructureDescription& s);

Json perm_to_json(const Perm& p);
Perm parse_perm(const Json& value, std::size_t degree);

/// {"degree", "generators"}; truncations add "points" and "base_sizes".
Json group_to_json(const PermGroup& g);
Json truncation_to_json(const Truncation& t, const UnaryStructure& base);
/// Accepts the output of group_to_json and truncation_to_json.
PermGroup parse_group(const Json& doc);
PermGroup read_group_file(const std::string& path);

/// Columns `n,count`, with or without the header line.
OrbitCountSequence read_sequence_csv(std::istream& in);
OrbitCountSequence read_sequence_csv_file(const std::string& path);
void write_sequence_csv(std::ostream& out, const OrbitCountSequence& seq);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace orbitforge::io
