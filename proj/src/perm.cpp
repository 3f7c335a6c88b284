#include "orbitforge/perm.hpp"

#include <numeric>

#include "orbitforge/errors.hpp"

namespace orbitforge {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point image : images_) {
    if (image >= images_.size() || seen[image]) {
      throw ValidationError("image array " + str() + " is not a permutation");
    }
    seen[image] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), Point{0});
  return p;
}

Perm Perm::from_cycles(std::size_t degree, std::initializer_list<std::vector<Point>> cycles) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i] >= degree) throw ValidationError("cycle point out of range");
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Perm(std::move(images));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Point>(i);
  return inv;
}

Perm operator*(const Perm& first, const Perm& then) {
  Perm result;
  result.images_.resize(first.images_.size());
  for (std::size_t i = 0; i < first.images_.size(); ++i) result.images_[i] = then.images_[first.images_[i]];
  return result;
}

std::string Perm::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out + "]";
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  // FNV-1a over the image array.
  std::size_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace orbitforge
