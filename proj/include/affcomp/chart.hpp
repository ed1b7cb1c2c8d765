#pragma once

// Affine charts on the set of complements of W.
//
// A chart fixes V = W (+) U inside K^n, an ordered basis of W and an ordered
// basis (b_i) of U. A complement S of W in V is named by the unique matrix
// gamma in Hom(U, W) with S = {u^gamma + u}: row i of gamma holds the
// W-coordinates of b_i^gamma. The scalar k acts as b_i -> k b_i on U, which
// makes k * gamma the entrywise left product.

#include <affcomp/projective.hpp>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace affcomp {

class chart_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class not_a_complement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AffineChart {
 public:
  /// Rows of `w_basis` and `u_basis` are ordered bases of W and U; they must
  /// span complementary nonzero subspaces of K^n.
  AffineChart(Matrix w_basis, Matrix u_basis) {
    auto data = std::make_shared<Data>(Data{std::move(w_basis), std::move(u_basis)});
    const Matrix& wb = data->w_basis;
    const Matrix& ub = data->u_basis;
    if (wb.cols() != ub.cols() || &wb.domain() != &ub.domain())
      throw shape_mismatch("chart: W and U bases live in different spaces");
    if (wb.rows() == 0 || ub.rows() == 0) throw std::invalid_argument("chart: W = 0 and W = V are excluded");
    data->adapted = stack(wb, ub);
    if (rank(data->adapted) != data->adapted.rows())
      throw std::invalid_argument("chart: W and U are not complementary (or bases are dependent)");
    data_ = std::move(data);
  }

  /// W = <e_1..e_k>, U = <e_{k+1}..e_n>, with those unit vectors as bases.
  static AffineChart standard(const ScalarDomain& d, std::size_t n, std::size_t k) {
    if (k == 0 || k >= n) throw std::invalid_argument("chart: need 0 < k < n");
    Matrix id = Matrix::identity(d, n);
    return {id.row_block(0, k), id.row_block(k, n - k)};
  }

  const ScalarDomain& domain() const { return data_->w_basis.domain(); }
  std::size_t ambient() const { return data_->w_basis.cols(); }
  std::size_t k() const { return data_->w_basis.rows(); }
  std::size_t m() const { return data_->u_basis.rows(); }
  bool is_symmetric() const { return k() == m(); }

  const Matrix& w_basis() const { return data_->w_basis; }
  const Matrix& u_basis() const { return data_->u_basis; }
  Subspace W() const { return Subspace(data_->w_basis); }
  Subspace U() const { return Subspace(data_->u_basis); }
  Subspace V() const { return Subspace(data_->adapted); }
  ZStructure z() const { return ZStructure(data_->u_basis); }

  /// Same W and W-basis, U rebased to the rows of `u_basis`.
  AffineChart with_u_basis(Matrix u_basis) const { return {w_basis(), std::move(u_basis)}; }

  /// Adapted coordinates (x, y) with v = x * w_basis + y * u_basis.
  std::pair<RowVector, RowVector> split(const RowVector& v) const {
    auto c = solve_left(data_->adapted, v);
    if (!c) throw std::invalid_argument("vector lies outside the chart's V");
    return {RowVector(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(k())),
            RowVector(c->begin() + static_cast<std::ptrdiff_t>(k()), c->end())};
  }
  RowVector join_coords(const RowVector& x, const RowVector& y) const {
    return act(x, w_basis()) + act(y, u_basis());
  }

  /// U^(gamma,1) = span{b_i^gamma + b_i}.
  Subspace decoordinatize(const Matrix& gamma) const {
    check_gamma(gamma);
    return Subspace(gamma * w_basis() + u_basis());
  }

  bool is_point(const Subspace& s) const { return is_complement_in(V(), W(), s); }

  /// gamma = (projection of S to U)^{-1} followed by projection to W.
  Matrix coordinatize(const Subspace& s) const {
    if (s.ambient() != ambient() || !is_point(s)) throw not_a_complement("subspace is not a complement of W in V");
    Matrix x(domain(), m(), k()), y(domain(), m(), m());
    for (std::size_t i = 0; i < m(); ++i) {
      auto [xi, yi] = split(s.basis().row(i));
      x.set_row(i, xi);
      y.set_row(i, yi);
    }
    auto yinv = inverse(y);
    if (!yinv) throw not_a_complement("projection of S onto U is not bijective");
    return *yinv * x;
  }

  void check_gamma(const Matrix& gamma) const {
    if (gamma.rows() != m() || gamma.cols() != k() || &gamma.domain() != &domain())
      throw shape_mismatch("coordinate matrix must be " + std::to_string(m()) + "x" + std::to_string(k()));
  }

  friend bool operator==(const AffineChart& a, const AffineChart& b) {
    return a.data_ == b.data_ || (a.w_basis() == b.w_basis() && a.u_basis() == b.u_basis());
  }

 private:
  struct Data {
    Matrix w_basis;
    Matrix u_basis;
    Matrix adapted = Matrix(w_basis.domain(), 0, 0);
  };
  std::shared_ptr<const Data> data_;
};

/// A point of the affine space: the complement U^(gamma,1) of a chart.
struct ComplementCoord {
  AffineChart chart;
  Matrix gamma;

  ComplementCoord(AffineChart c, Matrix g) : chart(std::move(c)), gamma(std::move(g)) { chart.check_gamma(gamma); }

  Subspace subspace() const { return chart.decoordinatize(gamma); }

  friend bool operator==(const ComplementCoord& a, const ComplementCoord& b) {
    return a.chart == b.chart && a.gamma == b.gamma;
  }
  friend bool operator<(const ComplementCoord& a, const ComplementCoord& b) { return a.gamma < b.gamma; }
};

inline ComplementCoord coordinatize(const AffineChart& chart, const Subspace& s) {
  return {chart, chart.coordinatize(s)};
}
inline Subspace decoordinatize(const ComplementCoord& c) { return c.subspace(); }

inline ComplementCoord origin(const AffineChart& chart) { return {chart, Matrix(chart.domain(), chart.m(), chart.k())}; }

namespace detail {
inline void check_same_chart(const AffineChart& a, const AffineChart& b) {
  if (!(a == b)) throw chart_mismatch("points belong to different charts");
}
}  // namespace detail

inline ComplementCoord operator+(const ComplementCoord& a, const ComplementCoord& b) {
  detail::check_same_chart(a.chart, b.chart);
  return {a.chart, a.gamma + b.gamma};
}
inline ComplementCoord operator-(const ComplementCoord& a, const ComplementCoord& b) {
  detail::check_same_chart(a.chart, b.chart);
  return {a.chart, a.gamma - b.gamma};
}
/// k * U^(gamma,1) = U^(lambda_k gamma, 1).
inline ComplementCoord operator*(const Scalar& k, const ComplementCoord& c) { return {c.chart, k * c.gamma}; }

/// U^(gamma,1) -> U^(gamma alpha,1) for alpha in End(W): the right action of
/// End(W) on Hom(U, W). No chart is built on it.
inline ComplementCoord right_action(const ComplementCoord& c, const Matrix& alpha) {
  if (alpha.rows() != c.chart.k() || alpha.cols() != c.chart.k()) throw shape_mismatch("alpha must be in End(W)");
  return {c.chart, c.gamma * alpha};
}

/// Complementary iff the difference of coordinates is invertible.
inline bool are_complementary(const ComplementCoord& a, const ComplementCoord& b) {
  detail::check_same_chart(a.chart, b.chart);
  return is_invertible(a.gamma - b.gamma);
}

/// Every point of a chart over a finite domain, gamma entries in row-major
/// order with the last entry varying fastest.
inline std::vector<ComplementCoord> all_points(const AffineChart& chart) {
  const auto elems = enumerate_scalars(chart.domain(), "all_points");
  const std::size_t m = chart.m(), k = chart.k();
  std::vector<ComplementCoord> out;
  detail::for_each_vector(elems, m * k, [&](const RowVector& flat) {
    Matrix gamma(chart.domain(), m, k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) gamma(i, j) = flat[i * k + j];
    out.emplace_back(chart, std::move(gamma));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Lines l(alpha, beta) = {U^(lambda_k alpha + beta, 1) | k in K}

class AffineLine {
 public:
  AffineLine(AffineChart chart, Matrix alpha, Matrix beta)
      : chart_(std::move(chart)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    chart_.check_gamma(alpha_);
    chart_.check_gamma(beta_);
    if (alpha_.is_zero()) throw std::invalid_argument("line direction alpha must be nonzero");
  }

  const AffineChart& chart() const { return chart_; }
  const Matrix& alpha() const { return alpha_; }
  const Matrix& beta() const { return beta_; }

  ComplementCoord at(const Scalar& k) const { return {chart_, k * alpha_ + beta_}; }

  /// Exact membership: gamma - beta = k alpha for some k.
  std::optional<Scalar> parameter_of(const Matrix& gamma) const {
    chart_.check_gamma(gamma);
    Matrix diff = gamma - beta_;
    for (std::size_t i = 0; i < alpha_.rows(); ++i)
      for (std::size_t j = 0; j < alpha_.cols(); ++j) {
        if (alpha_(i, j).is_zero()) continue;
        Scalar k = diff(i, j) * alpha_(i, j).inverse();
        if (k * alpha_ == diff) return k;
        return std::nullopt;
      }
    return std::nullopt;
  }
  bool contains(const ComplementCoord& c) const { return c.chart == chart_ && parameter_of(c.gamma).has_value(); }

 private:
  AffineChart chart_;
  Matrix alpha_;
  Matrix beta_;
};

/// l(gamma2 - gamma1, gamma1).
inline AffineLine line_through(const ComplementCoord& s1, const ComplementCoord& s2) {
  detail::check_same_chart(s1.chart, s2.chart);
  if (s1.gamma == s2.gamma) throw std::invalid_argument("line_through: points are equal");
  return {s1.chart, s2.gamma - s1.gamma, s1.gamma};
}

struct PointSequence {
  std::vector<ComplementCoord> points;
  bool is_sample = false;
};

/// k -> U^(lambda_k alpha + beta, 1) over scalars(domain); a sample for
/// infinite K (use AffineLine::contains for membership).
inline PointSequence points(const AffineLine& line, std::uint64_t seed = 0) {
  auto ks = scalars(line.chart().domain(), seed);
  PointSequence out;
  out.is_sample = ks.is_sample;
  for (const auto& k : ks.elements) out.points.push_back(line.at(k));
  return out;
}

/// alpha square and invertible; needs the symmetric case.
inline bool is_regular(const AffineLine& line) { return is_invertible(line.alpha()); }

// ---------------------------------------------------------------------------
// Collineations fixing W: block matrices [[alpha, 0], [eta, rho]]

struct BlockCollineation {
  Matrix alpha;  ///< Aut(W), k x k
  Matrix eta;    ///< Hom(U, W), m x k
  Matrix rho;    ///< Aut(U), m x m

  static BlockCollineation translation(const AffineChart& c, Matrix eta) {
    return {Matrix::identity(c.domain(), c.k()), std::move(eta), Matrix::identity(c.domain(), c.m())};
  }
};

namespace detail {
inline void check_blocks(const AffineChart& chart, const BlockCollineation& g) {
  if (g.alpha.rows() != chart.k() || g.alpha.cols() != chart.k() || g.rho.rows() != chart.m() ||
      g.rho.cols() != chart.m())
    throw shape_mismatch("collineation blocks do not fit the chart");
  chart.check_gamma(g.eta);
  if (!is_invertible(g.alpha) || !is_invertible(g.rho)) throw std::invalid_argument("collineation blocks must be invertible");
}
}  // namespace detail

/// U^(gamma,1) -> U^(gamma alpha + eta, rho) = U^(rho^{-1}(gamma alpha + eta), 1).
inline ComplementCoord collineation_action(const BlockCollineation& g, const ComplementCoord& c) {
  detail::check_blocks(c.chart, g);
  return {c.chart, *inverse(g.rho) * (c.gamma * g.alpha + g.eta)};
}

/// Image of a subspace of V under w + u -> (w^alpha + u^eta) + u^rho.
inline Subspace collineation_on_subspace(const AffineChart& chart, const BlockCollineation& g, const Subspace& s) {
  detail::check_blocks(chart, g);
  std::vector<RowVector> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    auto [x, y] = chart.split(s.basis().row(i));
    rows.push_back(chart.join_coords(act(x, g.alpha) + act(y, g.eta), act(y, g.rho)));
  }
  return Subspace::span(chart.domain(), chart.ambient(), rows);
}

// ---------------------------------------------------------------------------
// The normalizer N of lambda(K*) in Aut(U)

struct NDecomposition {
  Scalar m;     ///< nu = lambda_m zeta
  Matrix zeta;  ///< central w.r.t. (b_i); first nonzero entry is 1
};

inline bool is_central_matrix(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_central(a(i, j))) return false;
  return true;
}

/// nu = lambda_m zeta with zeta central, or nullopt when nu is not in N.
/// The pair is unique up to (m z, z^{-1} zeta), z in Z*; it is fixed here by
/// making the first nonzero entry of zeta (row-major) equal to 1.
inline std::optional<NDecomposition> n_group_decompose(const Matrix& nu) {
  if (!is_invertible(nu)) throw std::invalid_argument("n_group_decompose: nu must be invertible");
  for (std::size_t i = 0; i < nu.rows(); ++i)
    for (std::size_t j = 0; j < nu.cols(); ++j) {
      if (nu(i, j).is_zero()) continue;
      Scalar m = nu(i, j);
      Matrix zeta = m.inverse() * nu;
      if (!is_central_matrix(zeta)) return std::nullopt;
      return NDecomposition{m, zeta};
    }
  throw std::logic_error("invertible matrix without nonzero entry");
}

/// Matrix rho with b'_i = b_i^rho for two bases of the same U.
inline Matrix change_of_basis(const Matrix& from, const Matrix& to) {
  ZStructure z(from);
  Matrix rho(from.domain(), to.rows(), from.rows());
  for (std::size_t i = 0; i < to.rows(); ++i) rho.set_row(i, z.coordinates(to.row(i)));
  return rho;
}

/// Whether two charts on the same (V, W, U) carry the same affine space, i.e.
/// whether the projective Z-subspaces of P(K, U) w.r.t. their bases coincide.
///
/// The points K v with v a Z-combination of one basis, coefficients in
/// {-1, 0, 1}, are tested for membership in the other Z-subspace (both ways).
/// These include every b_i and b_1 + b_j, which already force the change of
/// basis into lambda_m times a central matrix, so the test is exact.
inline bool charts_equal(const AffineChart& a, const AffineChart& b) {
  if (&a.domain() != &b.domain() || a.ambient() != b.ambient() || !(a.W() == b.W()) || !(a.U() == b.U()))
    throw chart_mismatch("charts_equal: charts differ in V, W or U");
  const auto& d = a.domain();
  const std::vector<Scalar> coeffs{d.from_int(-1), d.zero(), d.one()};
  auto covered = [&](const AffineChart& from, const AffineChart& into) {
    ZStructure target = into.z();
    bool ok = true;
    detail::for_each_vector(coeffs, from.m(), [&](const RowVector& c) {
      if (!ok || is_zero_vector(c)) return;
      if (!target.contains_point(act(c, from.u_basis()))) ok = false;
    });
    return ok;
  };
  if (d.is_commutative()) return true;
  return covered(a, b) && covered(b, a);
}

// ---------------------------------------------------------------------------
// Homomorphisms between charts

/// hat(alpha): U^(gamma,1) -> U^(gamma alpha,1) for alpha: W1 -> W2, from a
/// chart over W1 (+) U to one over W2 (+) U whose U-bases correspond by index.
inline ComplementCoord hat_hom(const Matrix& alpha, const ComplementCoord& c, const AffineChart& target) {
  if (alpha.rows() != c.chart.k() || alpha.cols() != target.k() || c.chart.m() != target.m())
    throw shape_mismatch("hat_hom: alpha must map the source W to the target W over the same U");
  return {target, c.gamma * alpha};
}

/// The linear map w1 + u -> w1^alpha + u on vectors, for subspace-level checks.
inline RowVector hat_on_vector(const Matrix& alpha, const AffineChart& source, const AffineChart& target,
                               const RowVector& v) {
  auto [x, y] = source.split(v);
  return target.join_coords(act(x, alpha), y);
}

inline Subspace hat_on_subspace(const Matrix& alpha, const AffineChart& source, const AffineChart& target,
                                const Subspace& s) {
  std::vector<RowVector> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(hat_on_vector(alpha, source, target, s.basis().row(i)));
  return Subspace::span(target.domain(), target.ambient(), rows);
}

/// delta*: U2^(eta,1) -> U1^(delta eta,1) for delta: U1 -> U2 central w.r.t.
/// the two U-bases. `c` lives in the chart over W (+) U2, `target` is the
/// chart over W (+) U1.
inline ComplementCoord star_hom(const Matrix& delta, const ComplementCoord& c, const AffineChart& target) {
  if (delta.rows() != target.m() || delta.cols() != c.chart.m() || target.k() != c.chart.k())
    throw shape_mismatch("star_hom: delta must map U1 to U2 over the same W");
  if (!is_central_matrix(delta)) throw std::invalid_argument("star_hom: delta is not central");
  return {target, delta * c.gamma};
}

/// Chart over W (+) U' for a subspace U' of U given by its basis rows in the
/// (b_i)-coordinates of `chart`.
inline AffineChart sub_chart(const AffineChart& chart, const Matrix& u_prime_coords) {
  return {chart.w_basis(), u_prime_coords * chart.u_basis()};
}

/// Matrix of the inclusion U' -> U w.r.t. the bases of `sub` and `full`.
inline Matrix inclusion_map(const AffineChart& sub, const AffineChart& full) {
  return change_of_basis(full.u_basis(), sub.u_basis());
}

/// Matrix of the projection U -> U' with kernel C (given by basis rows as
/// vectors of K^n), w.r.t. the bases of `full` and `sub`.
inline Matrix projection_map(const AffineChart& full, const AffineChart& sub, const Matrix& c_basis) {
  Matrix both = stack(sub.u_basis(), c_basis);
  Matrix pi(full.domain(), full.m(), sub.m());
  for (std::size_t i = 0; i < full.m(); ++i) {
    auto coeffs = solve_left(both, full.u_basis().row(i));
    if (!coeffs) throw std::invalid_argument("projection_map: U' and C do not span U");
    for (std::size_t j = 0; j < sub.m(); ++j) pi(i, j) = (*coeffs)[j];
  }
  return pi;
}

}  // namespace affcomp
