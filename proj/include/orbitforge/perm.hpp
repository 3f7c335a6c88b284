#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace orbitforge {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}, stored as its image array.
///
/// Products compose left to right: (p * q)[x] == q[p[x]], i.e. apply p
/// first. With this convention x^(pq) = (x^p)^q, which is what the orbit
/// and coset algorithms assume.
class Perm {
 public:
  Perm() = default;
  /// Throws ValidationError if `images` is not a bijection.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Cycles are lists of points; points not mentioned are fixed.
  static Perm from_cycles(std::size_t degree, std::initializer_list<std::vector<Point>> cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;

  friend Perm operator*(const Perm& first, const Perm& then);

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  std::string str() const;  // "[1,0,2]"

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace orbitforge
