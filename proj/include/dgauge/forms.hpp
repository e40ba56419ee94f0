#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "dgauge/field.hpp"

namespace dgauge {

/// Strictly increasing multi-index mu_1 < ... < mu_k stored as a bit mask
/// (bit a set <=> axis a present).
using IndexSet = std::uint32_t;

inline int index_degree(IndexSet s) { return std::popcount(s); }

inline std::vector<int> index_axes(IndexSet s) {
  std::vector<int> axes;
  for (int a = 0; s; ++a, s >>= 1)
    if (s & 1u) axes.push_back(a);
  return axes;
}

/// Sign of dx^I ^ dx^J relative to dx^(I u J) in increasing order; zero when
/// I and J overlap. Counts pairs (i in I, j in J) with i > j.
inline int wedge_sign(IndexSet left, IndexSet right) {
  if (left & right) return 0;
  int inversions = 0;
  for (int j : index_axes(right)) inversions += std::popcount(left >> (j + 1));
  return (inversions % 2) ? -1 : 1;
}

/// Canonical index set and permutation sign of an arbitrary ordered axis list.
/// Sign is zero when an axis repeats.
inline std::pair<IndexSet, int> canonical_index(const std::vector<int>& axes) {
  IndexSet set = 0;
  int sign = 1;
  for (int a : axes) {
    const IndexSet bit = 1u << a;
    if (set & bit) return {0, 0};
    sign *= wedge_sign(set, bit);
    set |= bit;
  }
  return {set, sign};
}

/// Element of Omega^k with matrix-valued coefficients,
///   omega = sum_I f_I dx^I,   I strictly increasing,
/// coefficients always to the left of the basis forms. Every k-subset of the
/// axes has a (possibly zero) component; degree > dim gives the zero space.
template <typename Scalar>
class DiscreteForm {
 public:
  using Field = MatrixField<Scalar>;
  using Matrix = Mat<Scalar>;

  DiscreteForm(Lattice lattice, int rows, int cols, int degree)
      : lattice_(std::move(lattice)), rows_(rows), cols_(cols), degree_(degree) {
    if (degree < 0) throw DegreeError("form degree must be non-negative");
    const int n = lattice_.dim();
    for (IndexSet s = 0; s < (IndexSet{1} << n); ++s)
      if (index_degree(s) == degree) coeffs_.emplace(s, Field(lattice_, rows, cols));
  }
  DiscreteForm(Lattice lattice, int fiber_dim, int degree) : DiscreteForm(std::move(lattice), fiber_dim, fiber_dim, degree) {}

  /// Omega^0 is the function algebra itself.
  static DiscreteForm function(Field f) {
    DiscreteForm w(f.lattice(), f.rows(), f.cols(), 0);
    w.coeffs_.at(0) = std::move(f);
    return w;
  }
  /// c dx^{a_1} ^ ... ^ dx^{a_k} for an arbitrary axis order (sign and
  /// repeated-axis vanishing are applied).
  static DiscreteForm monomial(const Field& c, const std::vector<int>& axes) {
    for (int a : axes) c.lattice().check_axis(a);
    DiscreteForm w(c.lattice(), c.rows(), c.cols(), static_cast<int>(axes.size()));
    auto [set, sign] = canonical_index(axes);
    if (sign != 0) w.coeffs_.at(set) = Scalar(sign) * c;
    return w;
  }
  /// Sum_a c_a dx^a from one coefficient field per axis.
  static DiscreteForm one_form(const std::vector<Field>& coefficients) {
    if (coefficients.empty()) throw ShapeError("one_form: no coefficients");
    const Field& first = coefficients.front();
    DiscreteForm w(first.lattice(), first.rows(), first.cols(), 1);
    if (static_cast<int>(coefficients.size()) != first.lattice().dim())
      throw ShapeError("one_form: need one coefficient per direction");
    for (int a = 0; a < first.lattice().dim(); ++a) {
      require_same_shape(first, coefficients[static_cast<std::size_t>(a)]);
      w.coeffs_.at(IndexSet{1} << a) = coefficients[static_cast<std::size_t>(a)];
    }
    return w;
  }

  const Lattice& lattice() const { return lattice_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int fiber_dim() const { return cols_; }
  int degree() const { return degree_; }

  const std::map<IndexSet, Field>& components() const { return coeffs_; }
  const Field& operator[](IndexSet s) const { return component(s); }
  Field& operator[](IndexSet s) {
    auto it = coeffs_.find(s);
    if (it == coeffs_.end()) throw DegreeError("index set does not match form degree");
    return it->second;
  }

  /// Coefficient of dx^{a_1} ^ ... ^ dx^{a_k} in the given (not necessarily
  /// sorted) order.
  Field coefficient(const std::vector<int>& axes) const {
    if (static_cast<int>(axes.size()) != degree_) throw DegreeError("axis list length differs from form degree");
    for (int a : axes) lattice_.check_axis(a);
    auto [set, sign] = canonical_index(axes);
    if (sign == 0) return Field(lattice_, rows_, cols_);
    return Scalar(sign) * coeffs_.at(set);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [s, f] : coeffs_) m = std::max(m, f.max_abs());
    return m;
  }

  DiscreteForm& operator+=(const DiscreteForm& o) {
    require_compatible(*this, o);
    for (auto& [s, f] : coeffs_) f += o.coeffs_.at(s);
    return *this;
  }
  DiscreteForm& operator-=(const DiscreteForm& o) {
    require_compatible(*this, o);
    for (auto& [s, f] : coeffs_) f -= o.coeffs_.at(s);
    return *this;
  }
  DiscreteForm& operator*=(Scalar c) {
    for (auto& [s, f] : coeffs_) f *= c;
    return *this;
  }
  friend DiscreteForm operator+(DiscreteForm a, const DiscreteForm& b) { return a += b; }
  friend DiscreteForm operator-(DiscreteForm a, const DiscreteForm& b) { return a -= b; }
  friend DiscreteForm operator*(Scalar c, DiscreteForm a) { return a *= c; }

  friend void require_compatible(const DiscreteForm& a, const DiscreteForm& b) {
    if (a.lattice_ != b.lattice_) throw ShapeError("forms live on different lattices");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("forms have different coefficient shapes");
    if (a.degree_ != b.degree_) throw DegreeError("forms have different degrees");
  }

 private:
  const Field& component(IndexSet s) const {
    auto it = coeffs_.find(s);
    if (it == coeffs_.end()) throw DegreeError("index set does not match form degree");
    return it->second;
  }

  Lattice lattice_;
  int rows_;
  int cols_;
  int degree_;
  std::map<IndexSet, Field> coeffs_;
};

/// Max entry over all components of a - b.
template <typename Scalar>
double max_abs_difference(const DiscreteForm<Scalar>& a, const DiscreteForm<Scalar>& b) {
  return (a - b).max_abs();
}

/// omega ^ eta under dx^mu f = (E_mu f) dx^mu and dx^mu ^ dx^nu = -dx^nu ^ dx^mu:
///   (f_I dx^I) ^ (g_J dx^J) = sign(I, J) f_I (E_I g_J) dx^(I u J),
/// where E_I shifts once along each axis of I.
template <typename Scalar>
DiscreteForm<Scalar> wedge(const DiscreteForm<Scalar>& left, const DiscreteForm<Scalar>& right) {
  if (left.lattice() != right.lattice()) throw ShapeError("wedge: forms live on different lattices");
  if (left.cols() != right.rows()) throw ShapeError("wedge: coefficient shapes cannot be multiplied");
  const Lattice& lat = left.lattice();
  DiscreteForm<Scalar> out(lat, left.rows(), right.cols(), left.degree() + right.degree());
  if (left.degree() + right.degree() > lat.dim()) return out;
  if (left.degree() > 0 || right.degree() > 0) lat.require_periodic("wedge");

  for (const auto& [i_set, f] : left.components()) {
    for (const auto& [j_set, g] : right.components()) {
      const int sign = wedge_sign(i_set, j_set);
      if (sign == 0) continue;
      auto& target = out[i_set | j_set];
      for (std::size_t x = 0; x < lat.volume(); ++x) {
        const auto shifted = i_set ? lat.shift_by_mask(x, i_set) : x;
        if (sign > 0)
          target[x].noalias() += f[x] * g[shifted];
        else
          target[x].noalias() -= f[x] * g[shifted];
      }
    }
  }
  return out;
}

/// d_D(f dx^I) = sum_a (Delta_a f) dx^a ^ dx^I.
template <typename Scalar>
DiscreteForm<Scalar> exterior_derivative(const DiscreteForm<Scalar>& form) {
  const Lattice& lat = form.lattice();
  lat.require_periodic("exterior_derivative");
  DiscreteForm<Scalar> out(lat, form.rows(), form.cols(), form.degree() + 1);
  for (const auto& [set, f] : form.components()) {
    for (int a = 0; a < lat.dim(); ++a) {
      const IndexSet bit = IndexSet{1} << a;
      const int sign = wedge_sign(bit, set);
      if (sign == 0) continue;
      auto diff = difference(f, a);
      if (sign < 0) diff *= Scalar(-1);
      out[set | bit] += diff;
    }
  }
  return out;
}

/// omega(Delta_axis) for a one-form: its dx^axis coefficient.
template <typename Scalar>
MatrixField<Scalar> pair(const DiscreteForm<Scalar>& one_form, int axis) {
  if (one_form.degree() != 1) throw DegreeError("pair needs a one-form, got degree " + std::to_string(one_form.degree()));
  one_form.lattice().check_axis(axis);
  return one_form[IndexSet{1} << axis];
}

}  // namespace dgauge
