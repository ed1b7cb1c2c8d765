#pragma once

// Reguli in the symmetric case V = W (+) U with dim W = dim U, their
// transversal sets, and the cone decomposition of non-regular lines.

#include <affcomp/chart.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace affcomp {

class reconstruction_failed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {W} together with the regular line l(alpha, beta) of a symmetric chart.
/// Stored by its defining data; members are enumerated on demand.
class Regulus {
 public:
  Regulus(AffineChart chart, Matrix alpha, Matrix beta)
      : line_(require_symmetric(std::move(chart)), std::move(alpha), std::move(beta)) {
    if (!is_invertible(line_.alpha())) throw std::invalid_argument("regulus: alpha must be invertible");
  }

  const AffineChart& chart() const { return line_.chart(); }
  const Matrix& alpha() const { return line_.alpha(); }
  const Matrix& beta() const { return line_.beta(); }
  const AffineLine& affine_part() const { return line_; }
  Subspace W() const { return chart().W(); }

  /// The member U^(lambda_k alpha + beta, 1).
  Subspace at(const Scalar& k) const { return line_.at(k).subspace(); }

  bool contains(const Subspace& x) const {
    if (x == W()) return true;
    if (x.ambient() != chart().ambient() || !chart().is_point(x)) return false;
    return line_.parameter_of(chart().coordinatize(x)).has_value();
  }

  struct Members {
    std::vector<Subspace> subspaces;  ///< W first, then the line in scalar order
    bool is_sample = false;
  };
  Members members(std::uint64_t seed = 0) const {
    Members out;
    out.subspaces.push_back(W());
    auto pts = points(line_, seed);
    out.is_sample = pts.is_sample;
    for (const auto& p : pts.points) out.subspaces.push_back(p.subspace());
    return out;
  }

 private:
  static AffineChart require_symmetric(AffineChart c) {
    if (!c.is_symmetric()) throw std::invalid_argument("reguli need a symmetric chart (dim W = dim U)");
    return c;
  }
  AffineLine line_;
};

/// R0 = {W} u {U^(lambda_k, 1) | k in K}.
inline Regulus standard_regulus(const AffineChart& chart) {
  if (!chart.is_symmetric()) throw std::invalid_argument("standard_regulus: chart is not symmetric");
  const auto& d = chart.domain();
  return {chart, Matrix::identity(d, chart.k()), Matrix(d, chart.m(), chart.k())};
}

inline Regulus regular_line_regulus(const AffineLine& line) {
  if (!line.chart().is_symmetric() || !is_regular(line)) throw std::invalid_argument("line is not regular");
  return {line.chart(), line.alpha(), line.beta()};
}

inline Regulus regulus_through(const ComplementCoord& u1, const ComplementCoord& u2) {
  if (!are_complementary(u1, u2)) throw std::invalid_argument("regulus_through: points are not complementary");
  return regular_line_regulus(line_through(u1, u2));
}

struct TransversalSet {
  std::vector<Subspace> lines;
  bool is_sample = false;
};

namespace detail {

/// Normalized central coordinate vectors z, one per point of the
/// projective Z-subspace (a {-1,0,1} sample over the quaternions).
inline std::vector<RowVector> central_directions(const ScalarDomain& d, std::size_t m, bool& is_sample) {
  auto zs = central_scalars(d);
  is_sample = zs.is_sample;
  return normalized_vectors(zs.elements, m);
}

}  // namespace detail

/// Images K(z alpha, 0) + K(z beta, z) of the standard transversals
/// K(z, 0) + K(0, z) under [[alpha, 0], [beta, 1]].
inline TransversalSet transversals_of(const Regulus& r) {
  const auto& c = r.chart();
  TransversalSet out;
  for (const auto& z : detail::central_directions(c.domain(), c.m(), out.is_sample)) {
    RowVector p = act(act(z, r.alpha()), c.w_basis());
    RowVector q = act(act(z, r.beta()), c.w_basis()) + act(z, c.u_basis());
    out.lines.push_back(Subspace::span(c.domain(), c.ambient(), {p, q}));
  }
  return out;
}

/// {T meet X | T in T}: the trace of a transversal set on a member.
inline std::vector<Subspace> trace(const TransversalSet& t, const Subspace& x) {
  std::vector<Subspace> out;
  for (const auto& line : t.lines) out.push_back(meet(line, x));
  return canonical_set(std::move(out));
}

/// {W + T | T in T}.
inline std::vector<Subspace> w_plus(const Subspace& w, const TransversalSet& t) {
  std::vector<Subspace> out;
  for (const auto& line : t.lines) out.push_back(join(w, line));
  return canonical_set(std::move(out));
}

/// {W + P | P a point of the projective Z-subspace of U}.
inline std::vector<Subspace> w_plus_z_points(const AffineChart& chart, bool* is_sample = nullptr) {
  bool sample = false;
  std::vector<Subspace> out;
  for (const auto& z : detail::central_directions(chart.domain(), chart.m(), sample))
    out.push_back(join(chart.W(), Subspace::span(chart.domain(), chart.ambient(), {act(z, chart.u_basis())})));
  if (is_sample) *is_sample = sample;
  return canonical_set(std::move(out));
}

/// W + T = W + Z(U) for the transversals of `r`, w.r.t. the chart `chart`.
/// Over finite K the two sets are compared. Over the quaternions each sampled
/// W + T must meet U in a point of the projective Z-subspace of `chart`.
inline bool w_plus_transversals_match(const Regulus& r, const AffineChart& chart) {
  const auto t = transversals_of(r);
  if (chart.domain().is_finite()) return w_plus(chart.W(), t) == w_plus_z_points(chart);
  const ZStructure z = chart.z();
  for (const auto& line : t.lines) {
    Subspace p = meet(join(chart.W(), line), chart.U());
    if (p.dim() != 1 || !z.contains_point(p.basis().row(0))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reconstruction of a regulus from its transversals

namespace detail {

inline void require_lines(const TransversalSet& t) {
  if (t.lines.size() < 3) throw reconstruction_failed("need at least three transversals");
  for (const auto& l : t.lines) {
    if (l.dim() != 2) throw reconstruction_failed("transversals must be 2-dimensional");
    t.lines.front().check_ambient(l);
  }
  if (!t.lines.front().domain().is_finite())
    throw infinite_domain("reconstruct_from_transversals: needs a finite domain");
}

/// (i) every T meets X in exactly one point and these points span X;
/// (ii) T1 <= T2 + T3 forces the three traces onto a common line.
inline bool satisfies_transversal_conditions(const Subspace& x, const TransversalSet& t) {
  std::vector<Subspace> traces;
  Subspace spanned = Subspace::zero(x.domain(), x.ambient());
  for (const auto& line : t.lines) {
    Subspace p = meet(line, x);
    if (p.dim() != 1) return false;
    spanned = join(spanned, p);
    traces.push_back(std::move(p));
  }
  if (!(spanned == x)) return false;
  const std::size_t n = t.lines.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        if (a == b || a == c) continue;
        if (!t.lines[a].is_subspace_of(join(t.lines[b], t.lines[c]))) continue;
        if (join(join(traces[a], traces[b]), traces[c]).dim() > 2) return false;
      }
  return true;
}

}  // namespace detail

/// The unique regulus whose transversal set is `t`.
///
/// For each point P1 of the first transversal T1 the member through P1 is
/// built directly: for every other T2 pick T3 with T1 <= T2 + T3, and the
/// line through P1 meeting T2 and T3 hits T2 in (P1 + T3) meet T2. The
/// candidates are then checked against conditions (i) and (ii), and the
/// result is re-expressed as a standard regulus of the chart (X0, X1) with
/// the U-basis rescaled so that X2 = U^(1,1).
inline Regulus reconstruct_from_transversals(const TransversalSet& t) {
  detail::require_lines(t);
  const auto& lines = t.lines;
  const std::size_t n_lines = lines.size();

  std::vector<Subspace> members;
  for (const auto& p1 : projective_points(lines[0])) {
    Subspace x = p1;
    for (std::size_t t2 = 1; t2 < n_lines; ++t2) {
      std::optional<Subspace> q;
      for (std::size_t t3 = 1; t3 < n_lines && !q; ++t3) {
        if (t3 == t2 || !lines[0].is_subspace_of(join(lines[t2], lines[t3]))) continue;
        Subspace cand = meet(join(p1, lines[t3]), lines[t2]);
        if (cand.dim() == 1) q = cand;
      }
      if (!q) throw reconstruction_failed("no transversal line through a point of T1 meets T" + std::to_string(t2 + 1));
      x = join(x, *q);
    }
    if (!detail::satisfies_transversal_conditions(x, t))
      throw reconstruction_failed("candidate subspace violates the transversal conditions");
    members.push_back(std::move(x));
  }

  if (members.size() < 3) throw reconstruction_failed("fewer than three members");
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!is_complement_in(join(members[i], members[j]), members[i], members[j]) ||
          members[i].dim() != members[j].dim())
        throw reconstruction_failed("reconstructed members are not pairwise complementary");

  AffineChart base(members[0].basis(), members[1].basis());
  if (!base.is_point(members[2]) || !base.is_symmetric())
    throw reconstruction_failed("reconstructed members do not form a regulus");
  auto g2_inv = inverse(base.coordinatize(members[2]));
  if (!g2_inv) throw reconstruction_failed("third member is not complementary to the second");
  Regulus r = standard_regulus(base.with_u_basis(*g2_inv * base.u_basis()));

  auto listed = r.members();
  if (canonical_set(listed.subspaces) != canonical_set(members))
    throw reconstruction_failed("members are not the points of a regular line");
  if (canonical_set(transversals_of(r).lines) != canonical_set(lines))
    throw reconstruction_failed("input is not the full transversal set of a regulus");
  return r;
}

// ---------------------------------------------------------------------------
// Perspectivities between members

/// P -> (P + U3) meet U2 for points P of U1, with U1, U2, U3 distinct members.
class Perspectivity {
 public:
  Perspectivity(const Regulus& r, Subspace u1, Subspace u2, Subspace u3)
      : from_(std::move(u1)), to_(std::move(u2)), center_(std::move(u3)) {
    for (const auto* s : {&from_, &to_, &center_})
      if (!r.contains(*s)) throw std::invalid_argument("perspectivity: argument is not a regulus member");
    if (from_ == to_ || from_ == center_ || to_ == center_)
      throw std::invalid_argument("perspectivity: members must be distinct");
  }

  const Subspace& from() const { return from_; }
  const Subspace& to() const { return to_; }
  const Subspace& center() const { return center_; }

  Subspace operator()(const Subspace& p) const {
    if (p.dim() != 1 || !p.is_subspace_of(from_)) throw std::invalid_argument("perspectivity: not a point of U1");
    return meet(join(p, center_), to_);
  }

 private:
  Subspace from_, to_, center_;
};

// ---------------------------------------------------------------------------
// Lines through U with arbitrary alpha

struct TransversalImage {
  RowVector z;     ///< normalized central direction
  Subspace image;  ///< K z^alpha + K z, translated by beta
  bool is_point = false;
};

struct TransversalImages {
  std::vector<TransversalImage> images;
  bool is_sample = false;
};

/// Images K z^alpha + K z of the standard transversals under hat(alpha): a
/// point when z alpha = 0, a line otherwise.
/// For beta != 0 the result is moved by the translation [[1,0],[beta,1]].
inline TransversalImages line_transversal_image(const AffineLine& line) {
  const auto& c = line.chart();
  TransversalImages out;
  const bool translate = !line.beta().is_zero();
  for (const auto& z : detail::central_directions(c.domain(), c.m(), out.is_sample)) {
    RowVector za = act(z, line.alpha());
    Subspace img = Subspace::span(c.domain(), c.ambient(), {act(za, c.w_basis()), act(z, c.u_basis())});
    if (translate) img = collineation_on_subspace(c, BlockCollineation::translation(c, line.beta()), img);
    out.images.push_back({z, img, is_zero_vector(za)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cone decomposition of l(alpha, 0)

struct ConeDecomposition {
  Subspace kernel;              ///< ker(alpha) as a subspace of U
  Subspace vertex;              ///< M, the largest central subspace of ker(alpha)
  Subspace u_prime;             ///< central complement of ker(alpha) in U
  std::vector<std::size_t> u_prime_indices;  ///< U' = span(b_j : j in these)
  AffineChart base_chart;       ///< im(alpha) (+) U' with im(alpha) based on b_j^alpha
  Regulus base_regulus;         ///< standard regulus of base_chart
  bool exact = false;           ///< ker(alpha) is central

  Subspace image() const { return base_chart.W(); }
};

/// {X + ker(alpha) | X in the base regulus, X != im(alpha)}; a sample over
/// infinite K.
inline std::vector<Subspace> cone_points(const ConeDecomposition& cd, std::uint64_t seed = 0) {
  std::vector<Subspace> out;
  auto ms = cd.base_regulus.members(seed);
  for (const auto& x : ms.subspaces)
    if (!(x == cd.image())) out.push_back(join(x, cd.kernel));
  return out;
}

/// The member of l(alpha,0) for k meets W (+) U' in the base-regulus member for k.
inline bool intersection_matches(const ConeDecomposition& cd, const AffineLine& line, const Scalar& k) {
  Subspace wu = join(line.chart().W(), cd.u_prime);
  return meet(line.at(k).subspace(), wu) == cd.base_regulus.at(k);
}

inline ConeDecomposition cone_decompose(const AffineLine& line) {
  if (!line.beta().is_zero()) throw std::invalid_argument("cone_decompose: translate the line to beta = 0 first");
  const auto& c = line.chart();
  const auto& d = c.domain();
  const ZStructure z = c.z();
  Subspace ker = z.subspace_from(Subspace(kernel(line.alpha())));
  Subspace vertex = maximal_central_subspace(ker, z);
  auto idx = central_complement_indices(ker, z);
  std::vector<RowVector> w0, u0;
  for (auto j : idx) {
    w0.push_back(act(line.alpha().row(j), c.w_basis()));
    u0.push_back(c.u_basis().row(j));
  }
  AffineChart base(Matrix::from_rows(d, w0, c.ambient()), Matrix::from_rows(d, u0, c.ambient()));
  ConeDecomposition cd{ker, vertex, Subspace::span(d, c.ambient(), u0), idx, base, standard_regulus(base),
                       vertex == ker};

  if (d.is_finite() && cd.exact) {
    std::vector<Subspace> line_pts;
    for (const auto& p : points(line).points) line_pts.push_back(p.subspace());
    if (canonical_set(line_pts) != canonical_set(cone_points(cd)))
      throw std::logic_error("cone_decompose: line is not the cone over its base regulus");
  }
  return cd;
}

}  // namespace affcomp
