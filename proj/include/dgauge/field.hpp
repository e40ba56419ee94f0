#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dgauge/error.hpp"
#include "dgauge/lattice.hpp"
#include "dgauge/linalg.hpp"

namespace dgauge {

/// A matrix at every site of a lattice.
///
/// Square m x m values carry gauge functions, principal sections and form
/// coefficients; k x m values carry k stacked row sections of a rank-m
/// bundle. fiber_dim() is the column count in both cases. Functions in the
/// commutative algebra are the m = 1 case.
template <typename Scalar>
class MatrixField {
 public:
  using Matrix = Mat<Scalar>;

  MatrixField(Lattice lattice, int rows, int cols)
      : lattice_(std::move(lattice)), rows_(rows), cols_(cols),
        values_(lattice_.volume(), Matrix::Zero(rows, cols)) {
    if (rows < 1 || cols < 1) throw ShapeError("matrix field needs positive matrix shape");
  }
  MatrixField(Lattice lattice, int fiber_dim) : MatrixField(std::move(lattice), fiber_dim, fiber_dim) {}

  static MatrixField constant(Lattice lattice, const Matrix& value) {
    MatrixField f(std::move(lattice), static_cast<int>(value.rows()), static_cast<int>(value.cols()));
    for (auto& v : f.values_) v = value;
    return f;
  }
  static MatrixField identity(Lattice lattice, int fiber_dim) {
    return constant(std::move(lattice), Matrix::Identity(fiber_dim, fiber_dim));
  }
  /// Fills site i with fn(i).
  template <typename Fn>
  static MatrixField generate(Lattice lattice, int rows, int cols, Fn&& fn) {
    MatrixField f(std::move(lattice), rows, cols);
    for (std::size_t i = 0; i < f.size(); ++i) f.set(i, fn(i));
    return f;
  }

  const Lattice& lattice() const { return lattice_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int fiber_dim() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::size_t size() const { return values_.size(); }

  const Matrix& operator[](std::size_t site) const { return values_[site]; }
  Matrix& operator[](std::size_t site) { return values_[site]; }
  const Matrix& at(const Site& x) const { return values_[lattice_.index(x)]; }

  /// Assignment with shape check.
  void set(std::size_t site, Matrix value) {
    if (value.rows() != rows_ || value.cols() != cols_)
      throw ShapeError("value shape does not match field shape");
    values_[site] = std::move(value);
  }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, dgauge::max_abs(v));
    return m;
  }

  MatrixField& operator+=(const MatrixField& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  MatrixField& operator-=(const MatrixField& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  MatrixField& operator*=(Scalar s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

  friend MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
  friend MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }
  friend MatrixField operator-(MatrixField a) { return a *= Scalar(-1); }
  friend MatrixField operator*(Scalar s, MatrixField a) { return a *= s; }

  /// Pointwise matrix product (f g)(x) = f(x) g(x).
  friend MatrixField operator*(const MatrixField& a, const MatrixField& b) {
    if (a.lattice_ != b.lattice_) throw ShapeError("fields live on different lattices");
    if (a.cols_ != b.rows_) throw ShapeError("pointwise product: inner matrix dimensions differ");
    MatrixField out(a.lattice_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.size(); ++i) out.values_[i].noalias() = a.values_[i] * b.values_[i];
    return out;
  }

  friend void require_same_shape(const MatrixField& a, const MatrixField& b) {
    if (a.lattice_ != b.lattice_) throw ShapeError("fields live on different lattices");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("fields have different matrix shapes");
  }

 private:
  Lattice lattice_;
  int rows_;
  int cols_;
  std::vector<Matrix> values_;
};

/// Max-entry distance between two fields of identical shape.
template <typename Scalar>
double max_abs_difference(const MatrixField<Scalar>& a, const MatrixField<Scalar>& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a[i] - b[i]));
  return m;
}

/// An m x m matrix on every oriented link (x, x + e_axis).
///
/// Storage is site-major then axis, so link (site i, axis a) lives at
/// i * dim + a. On open axes the links leaving the lattice are kept as
/// storage slots but carry no meaning.
template <typename Scalar>
class LinkField {
 public:
  using Matrix = Mat<Scalar>;

  LinkField(Lattice lattice, int fiber_dim)
      : lattice_(std::move(lattice)), fiber_dim_(fiber_dim),
        values_(lattice_.link_count(), Matrix::Zero(fiber_dim, fiber_dim)) {
    if (fiber_dim < 1) throw ShapeError("fiber dimension must be positive");
  }

  static LinkField constant(Lattice lattice, const Matrix& value) {
    if (value.rows() != value.cols()) throw ShapeError("link values must be square");
    LinkField f(std::move(lattice), static_cast<int>(value.rows()));
    for (auto& v : f.values_) v = value;
    return f;
  }
  static LinkField identity(Lattice lattice, int fiber_dim) {
    return constant(std::move(lattice), Matrix::Identity(fiber_dim, fiber_dim));
  }
  /// Fills link (i, axis) with fn(i, axis).
  template <typename Fn>
  static LinkField generate(Lattice lattice, int fiber_dim, Fn&& fn) {
    LinkField f(std::move(lattice), fiber_dim);
    const int n = f.lattice_.dim();
    for (std::size_t i = 0; i < f.lattice_.volume(); ++i)
      for (int a = 0; a < n; ++a) f.set(i, a, fn(i, a));
    return f;
  }
  /// Assembles a link field from one site field per axis.
  static LinkField from_directions(const std::vector<MatrixField<Scalar>>& parts) {
    if (parts.empty()) throw ShapeError("no direction fields given");
    LinkField f(parts.front().lattice(), parts.front().fiber_dim());
    if (static_cast<int>(parts.size()) != f.lattice_.dim()) throw ShapeError("need one field per direction");
    for (int a = 0; a < f.lattice_.dim(); ++a) {
      const auto& p = parts[static_cast<std::size_t>(a)];
      if (p.lattice() != f.lattice_ || !p.square() || p.fiber_dim() != f.fiber_dim_)
        throw ShapeError("direction fields disagree in shape");
      for (std::size_t i = 0; i < p.size(); ++i) f(i, a) = p[i];
    }
    return f;
  }

  const Lattice& lattice() const { return lattice_; }
  int fiber_dim() const { return fiber_dim_; }
  std::size_t size() const { return values_.size(); }

  const Matrix& operator()(std::size_t site, int axis) const { return values_[slot(site, axis)]; }
  Matrix& operator()(std::size_t site, int axis) { return values_[slot(site, axis)]; }
  const Matrix& at(const Site& x, int axis) const { return (*this)(lattice_.index(x), axis); }

  void set(std::size_t site, int axis, Matrix value) {
    if (value.rows() != fiber_dim_ || value.cols() != fiber_dim_)
      throw ShapeError("link value shape does not match fiber dimension");
    values_[slot(site, axis)] = std::move(value);
  }

  /// Flat storage in serialization order.
  const std::vector<Matrix>& values() const { return values_; }
  std::vector<Matrix>& values() { return values_; }

  /// The site field x -> value on link (x, x + e_axis).
  MatrixField<Scalar> direction(int axis) const {
    lattice_.check_axis(axis);
    MatrixField<Scalar> f(lattice_, fiber_dim_);
    for (std::size_t i = 0; i < lattice_.volume(); ++i) f[i] = (*this)(i, axis);
    return f;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, dgauge::max_abs(v));
    return m;
  }

  friend bool same_shape(const LinkField& a, const LinkField& b) {
    return a.lattice_ == b.lattice_ && a.fiber_dim_ == b.fiber_dim_;
  }

 private:
  std::size_t slot(std::size_t site, int axis) const {
    return site * static_cast<std::size_t>(lattice_.dim()) + static_cast<std::size_t>(axis);
  }

  Lattice lattice_;
  int fiber_dim_;
  std::vector<Matrix> values_;
};

template <typename Scalar>
double max_abs_difference(const LinkField<Scalar>& a, const LinkField<Scalar>& b) {
  if (!same_shape(a, b)) throw ShapeError("link fields have different shapes");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a.values()[i] - b.values()[i]));
  return m;
}

/// (E_axis^sign f)(x) = f(x + sign e_axis).
template <typename Scalar>
MatrixField<Scalar> shift_field(const MatrixField<Scalar>& f, int axis, int sign) {
  const Lattice& lat = f.lattice();
  lat.require_periodic("shift_field");
  lat.check_axis(axis);
  MatrixField<Scalar> out(lat, f.rows(), f.cols());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[lat.shift(i, axis, sign)];
  return out;
}

/// Forward shift along every axis in the bit mask, (E_I f)(x) = f(x + sum e_a).
template <typename Scalar>
MatrixField<Scalar> shift_field_by_mask(const MatrixField<Scalar>& f, std::uint32_t axes) {
  const Lattice& lat = f.lattice();
  lat.require_periodic("shift_field");
  if (axes == 0) return f;
  MatrixField<Scalar> out(lat, f.rows(), f.cols());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[lat.shift_by_mask(i, axes)];
  return out;
}

/// Forward difference (Delta_axis f)(x) = f(x + e_axis) - f(x).
template <typename Scalar>
MatrixField<Scalar> difference(const MatrixField<Scalar>& f, int axis) {
  const Lattice& lat = f.lattice();
  lat.require_periodic("difference");
  lat.check_axis(axis);
  MatrixField<Scalar> out(lat, f.rows(), f.cols());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[lat.shift(i, axis, +1)] - f[i];
  return out;
}

}  // namespace dgauge
