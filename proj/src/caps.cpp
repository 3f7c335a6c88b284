#include "orbitforge/caps.hpp"

#include <charconv>
#include <string>

#include "orbitforge/errors.hpp"

namespace orbitforge {

void Caps::apply_overrides(std::string_view text) {
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == ';'; };
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    if (end == pos) break;
    const std::string_view item = text.substr(pos, end - pos);
    pos = end;

    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("cap override '" + std::string(item) + "' is not key=value");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view text = item.substr(eq + 1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || value == 0) {
      throw ValidationError("cap '" + std::string(key) + "' needs a positive integer");
    }

    if (key == "order_cap") order_cap = value;
    else if (key == "work_cap") work_cap = value;
    else if (key == "index_cap") index_cap = value;
    else if (key == "partition_cap") partition_cap = value;
    else if (key == "oracle_cap") oracle_cap = value;
    else if (key == "orbit_cap") orbit_cap = value;
    else if (key == "count_cap") count_cap = value;
    else if (key == "cover_order_cap") cover_order_cap = value;
    else if (key == "fiber_sum_cap") fiber_sum_cap = value;
    else if (key == "denominator_cap") denominator_cap = value;
    else throw ValidationError("unknown cap '" + std::string(key) + "'");
  }
}

}  // namespace orbitforge
