#pragma once

#include <string>
#include <vector>

#include "dgauge/connection.hpp"

namespace dgauge {

/// Discrete Lax pair on an open M x N grid with sites (m, n):
///   psi(m+1, n) = psi(m, n) U_x(m, n),   psi(m, n+1) = psi(m, n) U_t(m, n).
/// Axis 0 is x, axis 1 is t. U_x exists for m < M-1, U_t for n < N-1; the
/// storage slots of links leaving the grid are normalized to the identity.
template <typename Scalar>
class LaxSystem {
 public:
  using Matrix = Mat<Scalar>;

  explicit LaxSystem(LinkField<Scalar> links) : links_(std::move(links)) {
    const Lattice& g = links_.lattice();
    if (g.dim() != 2) throw ShapeError("Lax system needs a two-dimensional grid");
    if (g.boundary(0) != Boundary::Open || g.boundary(1) != Boundary::Open)
      throw BoundaryError("Lax system grid must have open boundaries");
    const int m = links_.fiber_dim();
    for (std::size_t x = 0; x < g.volume(); ++x) {
      for (int a = 0; a < 2; ++a) {
        if (!g.try_shift(x, a, +1)) {
          links_(x, a) = Matrix::Identity(m, m);
        } else if (!is_invertible(links_(x, a))) {
          throw SingularityError("Lax matrix is singular on " + detail::link_name(g, x, a));
        }
      }
    }
  }

  /// U = 1 + A for both link fields.
  static LaxSystem from_potentials(LinkField<Scalar> a) {
    const int m = a.fiber_dim();
    for (auto& v : a.values()) v += Matrix::Identity(m, m);
    return LaxSystem(std::move(a));
  }

  const Lattice& grid() const { return links_.lattice(); }
  const Lattice& lattice() const { return links_.lattice(); }
  const LinkField<Scalar>& links() const { return links_; }
  int fiber_dim() const { return links_.fiber_dim(); }
  int extent_x() const { return grid().extent(0); }
  int extent_t() const { return grid().extent(1); }

  const Matrix& ux(int m, int n) const { return links_(index(m, n), 0); }
  const Matrix& ut(int m, int n) const { return links_(index(m, n), 1); }
  Matrix ax(int m, int n) const { return ux(m, n) - Matrix::Identity(fiber_dim(), fiber_dim()); }
  Matrix at(int m, int n) const { return ut(m, n) - Matrix::Identity(fiber_dim(), fiber_dim()); }

  std::size_t index(int m, int n) const { return grid().index({m, n}); }

 private:
  LinkField<Scalar> links_;
};

/// Pure-gauge pair U_x = h^-1(m,n) h(m+1,n), U_t = h^-1(m,n) h(m,n+1);
/// consistent by construction.
template <typename Scalar>
LaxSystem<Scalar> pure_gauge_lax(const MatrixField<Scalar>& h) {
  const Lattice& g = h.lattice();
  if (!h.square()) throw ShapeError("gauge field must be square");
  std::vector<Mat<Scalar>> inv(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (!is_invertible(h[x])) throw SingularityError("gauge element is singular at " + detail::site_name(g, x));
    inv[x] = inverse<Scalar>(h[x]);
  }
  LinkField<Scalar> links(g, h.fiber_dim());
  for (std::size_t x = 0; x < g.volume(); ++x)
    for (int a = 0; a < g.dim(); ++a)
      if (auto next = g.try_shift(x, a, +1)) links(x, a) = inv[x] * h[*next];
  return LaxSystem<Scalar>(std::move(links));
}

/// Residuals of the zero-curvature condition on plaquette (m, n):
///   additive        U_x(m,n) U_t(m+1,n) - U_t(m,n) U_x(m,n+1)
///   multiplicative  U_x(m,n) U_t(m+1,n) U_x(m,n+1)^-1 U_t(m,n)^-1 - I
///   a_form          Delta_x A_t - Delta_t A_x + A_x(m,n) A_t(m+1,n) - A_t(m,n) A_x(m,n+1)
/// with A = U - 1. additive and a_form agree identically.
template <typename Scalar>
struct LaxPlaquetteResidual {
  Mat<Scalar> additive;
  Mat<Scalar> multiplicative;
  Mat<Scalar> a_form;
};

template <typename Scalar>
LaxPlaquetteResidual<Scalar> consistency_residual(const LaxSystem<Scalar>& sys, int m, int n) {
  if (m < 0 || n < 0 || m >= sys.extent_x() - 1 || n >= sys.extent_t() - 1)
    throw BoundaryError("plaquette (" + std::to_string(m) + "," + std::to_string(n) + ") is outside the grid");
  const int dim = sys.fiber_dim();
  const auto id = Mat<Scalar>::Identity(dim, dim);
  LaxPlaquetteResidual<Scalar> r;
  const Mat<Scalar> forward = sys.ux(m, n) * sys.ut(m + 1, n);
  r.additive = forward - sys.ut(m, n) * sys.ux(m, n + 1);
  r.multiplicative = forward * inverse<Scalar>(sys.ux(m, n + 1)) * inverse<Scalar>(sys.ut(m, n)) - id;
  const auto ax = sys.ax(m, n), at = sys.at(m, n);
  const auto at_x = sys.at(m + 1, n), ax_t = sys.ax(m, n + 1);
  r.a_form = (at_x - at) - (ax_t - ax) + ax * at_x - at * ax_t;
  return r;
}

/// Whole-grid summary; per-plaquette entries are stored row-major over
/// (m, n) with n fastest, (M-1) x (N-1) of them.
template <typename Scalar>
struct LaxConsistencyReport {
  int plaquettes_x = 0;
  int plaquettes_t = 0;
  std::vector<LaxPlaquetteResidual<Scalar>> plaquettes;
  double max_additive = 0.0;
  double max_multiplicative = 0.0;
  double max_a_form = 0.0;
  double form_gap = 0.0;  // max |additive - a_form|

  const LaxPlaquetteResidual<Scalar>& operator()(int m, int n) const {
    return plaquettes[static_cast<std::size_t>(m * plaquettes_t + n)];
  }
};

template <typename Scalar>
LaxConsistencyReport<Scalar> consistency_residual(const LaxSystem<Scalar>& sys) {
  LaxConsistencyReport<Scalar> rep;
  rep.plaquettes_x = std::max(0, sys.extent_x() - 1);
  rep.plaquettes_t = std::max(0, sys.extent_t() - 1);
  for (int m = 0; m < rep.plaquettes_x; ++m) {
    for (int n = 0; n < rep.plaquettes_t; ++n) {
      auto r = consistency_residual(sys, m, n);
      rep.max_additive = std::max(rep.max_additive, max_abs(r.additive));
      rep.max_multiplicative = std::max(rep.max_multiplicative, max_abs(r.multiplicative));
      rep.max_a_form = std::max(rep.max_a_form, max_abs(r.a_form));
      rep.form_gap = std::max(rep.form_gap, max_abs(r.additive - r.a_form));
      rep.plaquettes.push_back(std::move(r));
    }
  }
  return rep;
}

/// psi <- psi U_x or psi U_t along a path of forward steps.
template <typename Scalar>
Mat<Scalar> propagate(const LaxSystem<Scalar>& sys, const Mat<Scalar>& psi0, const LatticePath& path) {
  if (psi0.cols() != sys.fiber_dim()) throw ShapeError("wave function length differs from fiber dimension");
  for (const auto& s : path.steps)
    if (s.sign != +1) throw ConfigError("Lax propagation accepts forward steps only");
  const auto sites = path.sites(sys.grid());
  Mat<Scalar> psi = psi0;
  for (std::size_t k = 0; k < path.steps.size(); ++k) psi = psi * sys.links()(sites[k], path.steps[k].axis);
  return psi;
}

struct PathIndependenceReport {
  double max_deviation = 0.0;  // max over path pairs of |psi_p - psi_q|
  std::size_t path_count = 0;
};

/// Longest monotone staircase (in steps) path_independence will enumerate.
inline constexpr int kMaxStaircaseSteps = 16;

/// Propagates psi0 from the origin to `target` along every monotone
/// staircase path and reports the largest pairwise disagreement.
template <typename Scalar>
PathIndependenceReport path_independence(const LaxSystem<Scalar>& sys, const Mat<Scalar>& psi0, const Site& target) {
  if (psi0.cols() != sys.fiber_dim()) throw ShapeError("wave function length differs from fiber dimension");
  if (!sys.grid().contains(target)) throw BoundaryError("target is not reachable inside the grid");
  const int tx = target[0], tt = target[1];
  if (tx + tt > kMaxStaircaseSteps)
    throw ConfigError("target too far for exhaustive path enumeration (at most " + std::to_string(kMaxStaircaseSteps) +
                      " steps)");

  std::vector<Mat<Scalar>> ends;
  // Depth-first over staircases; the partial product is carried along.
  auto walk = [&](auto&& self, int m, int n, const Mat<Scalar>& psi) -> void {
    if (m == tx && n == tt) {
      ends.push_back(psi);
      return;
    }
    if (m < tx) self(self, m + 1, n, (psi * sys.ux(m, n)).eval());
    if (n < tt) self(self, m, n + 1, (psi * sys.ut(m, n)).eval());
  };
  walk(walk, 0, 0, psi0);

  PathIndependenceReport rep;
  rep.path_count = ends.size();
  for (std::size_t p = 0; p < ends.size(); ++p)
    for (std::size_t q = p + 1; q < ends.size(); ++q)
      rep.max_deviation = std::max(rep.max_deviation, max_abs(ends[p] - ends[q]));
  return rep;
}

}  // namespace dgauge
