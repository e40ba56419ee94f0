#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dgauge {

enum class Boundary { Periodic, Open };

/// Lattice coordinates, one entry per axis. Axes are 0-based in the library;
/// axis 0 is the direction written "1" in the usual index notation.
using Site = std::vector<int>;

/// Hypercubic lattice Z^n truncated to L_1 x ... x L_n with unit spacing.
///
/// Sites are numbered lexicographically with the last coordinate running
/// fastest; this order is used for iteration and serialization everywhere.
class Lattice {
 public:
  explicit Lattice(std::vector<int> extents, Boundary boundary = Boundary::Periodic);
  Lattice(std::vector<int> extents, std::vector<Boundary> boundaries);

  int dim() const { return static_cast<int>(extents_.size()); }
  int extent(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& extents() const { return extents_; }
  Boundary boundary(int axis) const { return boundaries_[static_cast<std::size_t>(axis)]; }
  const std::vector<Boundary>& boundaries() const { return boundaries_; }
  bool periodic() const;

  std::size_t volume() const { return volume_; }
  std::size_t link_count() const { return volume_ * extents_.size(); }

  bool contains(const Site& x) const;
  /// Reduces coordinates modulo the extent on periodic axes.
  Site canonical(Site x) const;
  std::size_t index(const Site& x) const;
  Site site(std::size_t index) const;
  int coordinate(std::size_t index, int axis) const;

  /// x + sign * e_axis; wraps on periodic axes, throws BoundaryError when it
  /// would leave an open axis.
  Site shift(Site x, int axis, int sign) const;
  std::size_t shift(std::size_t index, int axis, int sign) const;
  /// As shift() but returns nullopt instead of throwing on open axes.
  std::optional<std::size_t> try_shift(std::size_t index, int axis, int sign) const;
  /// Forward shift along every axis set in `axes` (bit a = axis a).
  std::size_t shift_by_mask(std::size_t index, std::uint32_t axes) const;

  void check_axis(int axis) const;
  /// Throws BoundaryError naming `operation` if any axis is open.
  void require_periodic(std::string_view operation) const;

  std::string describe() const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.extents_ == b.extents_ && a.boundaries_ == b.boundaries_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

 private:
  std::vector<int> extents_;
  std::vector<Boundary> boundaries_;
  std::vector<std::size_t> strides_;
  std::size_t volume_ = 0;
};

}  // namespace dgauge
