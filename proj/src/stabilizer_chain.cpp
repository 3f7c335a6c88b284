#include "orbitforge/stabilizer_chain.hpp"

#include "orbitforge/errors.hpp"

namespace orbitforge {

namespace {

bool fixes_all(const Perm& g, std::span<const Point> points) {
  for (Point p : points) {
    if (g[p] != p) return false;
  }
  return true;
}

Point first_moved_point(const Perm& g) {
  for (Point x = 0; x < g.degree(); ++x) {
    if (g[x] != x) return x;
  }
  return 0;
}

}  // namespace

StabilizerChain::StabilizerChain(std::size_t degree, std::span<const Perm> generators,
                                 std::span<const Point> base_prefix)
    : degree_(degree) {
  std::vector<Perm> strong;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw ValidationError("generator degree does not match the group degree");
    if (!g.is_identity()) strong.push_back(g);
  }
  for (Point p : base_prefix) {
    if (p >= degree) throw ValidationError("base point out of range");
    append_level(p);
  }
  // Every generator must move some base point.
  for (const auto& g : strong) {
    const auto base_points = base();
    if (fixes_all(g, base_points)) append_level(first_moved_point(g));
  }
  {
    std::vector<Point> prefix;
    for (auto& level : levels_) {
      for (const auto& g : strong) {
        if (fixes_all(g, prefix)) level.generators.push_back(g);
      }
      prefix.push_back(level.point);
      rebuild_orbit(level);
    }
  }

  std::size_t i = levels_.size();
  while (i > 0) {
    const std::size_t current = i - 1;
    bool extended = false;
    for (std::size_t oi = 0; !extended && oi < levels_[current].orbit.size(); ++oi) {
      for (std::size_t si = 0; !extended && si < levels_[current].generators.size(); ++si) {
        const Level& level = levels_[current];
        const Point beta = level.orbit[oi];
        const Perm& s = level.generators[si];
        Perm schreier = *level.transversal[beta] * s * level.transversal[s[beta]]->inverse();
        if (schreier.is_identity()) continue;
        auto [residue, stop] = strip(std::move(schreier), i);
        if (stop == levels_.size() && residue.is_identity()) continue;
        if (stop == levels_.size()) append_level(first_moved_point(residue));
        for (std::size_t l = i; l <= stop; ++l) {
          levels_[l].generators.push_back(residue);
          rebuild_orbit(levels_[l]);
        }
        i = stop + 1;
        extended = true;
      }
    }
    if (!extended) --i;
  }
}

void StabilizerChain::append_level(Point point) {
  Level level;
  level.point = point;
  levels_.push_back(std::move(level));
}

void StabilizerChain::rebuild_orbit(Level& level) const {
  level.transversal.assign(degree_, std::nullopt);
  level.orbit.clear();
  level.transversal[level.point] = Perm::identity(degree_);
  level.orbit.push_back(level.point);
  for (std::size_t head = 0; head < level.orbit.size(); ++head) {
    const Point gamma = level.orbit[head];
    for (const auto& s : level.generators) {
      const Point delta = s[gamma];
      if (!level.transversal[delta]) {
        level.transversal[delta] = *level.transversal[gamma] * s;
        level.orbit.push_back(delta);
      }
    }
  }
}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm g, std::size_t start) const {
  for (std::size_t l = start; l < levels_.size(); ++l) {
    const Point beta = g[levels_[l].point];
    const auto& u = levels_[l].transversal[beta];
    if (!u) return {std::move(g), l};
    g = g * u->inverse();
  }
  return {std::move(g), levels_.size()};
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> points;
  points.reserve(levels_.size());
  for (const auto& level : levels_) points.push_back(level.point);
  return points;
}

BigInt StabilizerChain::order() const {
  BigInt result = 1;
  for (const auto& level : levels_) result *= level.orbit.size();
  return result;
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, stop] = strip(g, 0);
  return stop == levels_.size() && residue.is_identity();
}

const std::vector<Perm>& StabilizerChain::stabilizer_generators(std::size_t level) const {
  if (level >= levels_.size()) return empty_;
  return levels_[level].generators;
}

}  // namespace orbitforge
