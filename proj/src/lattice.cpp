#include "dgauge/lattice.hpp"

#include <sstream>

#include "dgauge/error.hpp"

namespace dgauge {

Lattice::Lattice(std::vector<int> extents, Boundary boundary)
    : Lattice(extents, std::vector<Boundary>(extents.size(), boundary)) {}

Lattice::Lattice(std::vector<int> extents, std::vector<Boundary> boundaries)
    : extents_(std::move(extents)), boundaries_(std::move(boundaries)) {
  if (extents_.empty()) throw ShapeError("lattice needs at least one axis");
  if (extents_.size() > 32) throw ShapeError("lattice supports at most 32 axes");
  if (boundaries_.size() != extents_.size())
    throw ShapeError("boundary list length does not match number of axes");
  for (int l : extents_)
    if (l < 1) throw ShapeError("lattice extents must be positive");

  strides_.assign(extents_.size(), 1);
  for (std::size_t a = extents_.size() - 1; a > 0; --a)
    strides_[a - 1] = strides_[a] * static_cast<std::size_t>(extents_[a]);
  volume_ = strides_[0] * static_cast<std::size_t>(extents_[0]);
}

bool Lattice::periodic() const {
  for (Boundary b : boundaries_)
    if (b != Boundary::Periodic) return false;
  return true;
}

bool Lattice::contains(const Site& x) const {
  if (x.size() != extents_.size()) return false;
  for (std::size_t a = 0; a < x.size(); ++a)
    if (x[a] < 0 || x[a] >= extents_[a]) return false;
  return true;
}

Site Lattice::canonical(Site x) const {
  if (x.size() != extents_.size()) throw ShapeError("site has wrong number of coordinates");
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (boundaries_[a] == Boundary::Periodic) {
      x[a] %= extents_[a];
      if (x[a] < 0) x[a] += extents_[a];
    }
  }
  return x;
}

std::size_t Lattice::index(const Site& x) const {
  if (!contains(x)) throw BoundaryError("site outside lattice " + describe());
  std::size_t idx = 0;
  for (std::size_t a = 0; a < x.size(); ++a) idx += static_cast<std::size_t>(x[a]) * strides_[a];
  return idx;
}

Site Lattice::site(std::size_t index) const {
  if (index >= volume_) throw BoundaryError("site index out of range");
  Site x(extents_.size());
  for (std::size_t a = 0; a < x.size(); ++a) x[a] = coordinate(index, static_cast<int>(a));
  return x;
}

int Lattice::coordinate(std::size_t index, int axis) const {
  const auto a = static_cast<std::size_t>(axis);
  return static_cast<int>((index / strides_[a]) % static_cast<std::size_t>(extents_[a]));
}

void Lattice::check_axis(int axis) const {
  if (axis < 0 || axis >= dim())
    throw ShapeError("direction " + std::to_string(axis + 1) + " invalid on " +
                     std::to_string(dim()) + "-dimensional lattice");
}

Site Lattice::shift(Site x, int axis, int sign) const {
  return site(shift(index(x), axis, sign));
}

std::optional<std::size_t> Lattice::try_shift(std::size_t index, int axis, int sign) const {
  check_axis(axis);
  if (sign != 1 && sign != -1) throw ShapeError("shift sign must be +1 or -1");
  const auto a = static_cast<std::size_t>(axis);
  const int l = extents_[a];
  const int c = coordinate(index, axis);
  int next = c + sign;
  if (next < 0 || next >= l) {
    if (boundaries_[a] == Boundary::Open) return std::nullopt;
    next = (next + l) % l;
  }
  return index + static_cast<std::size_t>(next) * strides_[a] - static_cast<std::size_t>(c) * strides_[a];
}

std::size_t Lattice::shift(std::size_t index, int axis, int sign) const {
  auto next = try_shift(index, axis, sign);
  if (!next) {
    std::ostringstream msg;
    msg << "shift along open direction " << axis + 1 << " leaves the lattice at coordinate "
        << coordinate(index, axis) + sign;
    throw BoundaryError(msg.str());
  }
  return *next;
}

std::size_t Lattice::shift_by_mask(std::size_t index, std::uint32_t axes) const {
  for (int a = 0; a < dim(); ++a)
    if (axes & (1u << a)) index = shift(index, a, +1);
  return index;
}

void Lattice::require_periodic(std::string_view operation) const {
  if (!periodic())
    throw BoundaryError(std::string(operation) + " requires a fully periodic lattice, got " + describe());
}

std::string Lattice::describe() const {
  std::ostringstream s;
  for (std::size_t a = 0; a < extents_.size(); ++a) {
    if (a) s << 'x';
    s << extents_[a];
  }
  s << (periodic() ? " periodic" : " (open axes)");
  return s.str();
}

}  // namespace dgauge
