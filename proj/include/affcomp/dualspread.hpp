#pragma once

// Families (w_i) of vectors of W as coordinates of complements, singular
// subspaces S(X) inside hyperplanes, dual spreads and *-transversal families.

#include <affcomp/chart.hpp>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace affcomp {

/// (w_i), i indexing the basis (b_i) of U; each w_i in W-coordinates.
using FamilyPoint = std::vector<RowVector>;

/// psi: (w_i) -> U^(gamma,1) with b_i^gamma = w_i.
inline ComplementCoord psi(const AffineChart& chart, const FamilyPoint& w) {
  if (w.size() != chart.m()) throw std::invalid_argument("psi: family must have one entry per basis vector of U");
  for (const auto& wi : w)
    if (wi.size() != chart.k()) throw shape_mismatch("psi: family entries must be W-coordinate vectors");
  return {chart, Matrix::from_rows(chart.domain(), w, chart.k())};
}

inline FamilyPoint psi_inv(const ComplementCoord& c) { return c.gamma.row_list(); }

/// The point K(w + b_i) of P(K, W (+) K b_i).
inline Subspace psi_point(const AffineChart& chart, std::size_t i, const RowVector& w) {
  return Subspace::span(chart.domain(), chart.ambient(), {act(w, chart.w_basis()) + chart.u_basis().row(i)});
}

namespace detail {

inline void require_full(const AffineChart& chart) {
  if (chart.k() + chart.m() != chart.ambient())
    throw std::invalid_argument("dual spreads need a chart with V equal to the whole space");
}

/// Canonical representative of v + H: pivot coordinates of H's echelon basis cleared.
inline RowVector reduce_mod(RowVector v, const Subspace& h) {
  auto pivots = rref_left(h.basis()).pivots;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Scalar f = v[pivots[r]];
    if (!f.is_zero()) v = v - f * h.basis().row(r);
  }
  return v;
}

inline std::vector<Matrix> sorted_gammas(const std::vector<ComplementCoord>& pts) {
  std::vector<Matrix> g;
  for (const auto& p : pts) g.push_back(p.gamma);
  std::sort(g.begin(), g.end());
  return g;
}

}  // namespace detail

/// Whether a finite set of points is closed under k -> a + k(b - a).
inline bool is_affine_subspace(const std::vector<ComplementCoord>& pts) {
  if (pts.empty()) return true;
  const auto elems = enumerate_scalars(pts.front().chart.domain(), "is_affine_subspace");
  std::set<Matrix> have;
  for (const auto& p : pts) have.insert(p.gamma);
  for (const auto& a : pts)
    for (const auto& b : pts) {
      if (a.gamma == b.gamma) continue;
      for (const auto& k : elems)
        if (!have.count(a.gamma + k * (b.gamma - a.gamma))) return false;
    }
  return true;
}

/// No two points of the set are complementary (no regular line inside).
inline bool is_singular(const std::vector<ComplementCoord>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (are_complementary(pts[i], pts[j])) return false;
  return true;
}

/// Every point outside `pts` is complementary to some point of `pts`.
inline bool is_maximal_singular(const AffineChart& chart, const std::vector<ComplementCoord>& pts) {
  std::set<Matrix> have;
  for (const auto& p : pts) have.insert(p.gamma);
  for (const auto& s : all_points(chart)) {
    if (have.count(s.gamma)) continue;
    bool extends = std::any_of(pts.begin(), pts.end(), [&](const ComplementCoord& p) { return are_complementary(p, s); });
    if (!extends) return false;
  }
  return true;
}

/// S(X) = {S in the chart | S <= X} for a hyperplane X with W not in X,
/// together with its description (c_i) + H^I, H = X meet W.
struct SingularSubspace {
  Subspace hyperplane;
  Subspace h;           ///< X meet W in K^n
  Subspace h_coords;    ///< the same in W-coordinates
  FamilyPoint offset;   ///< (c_i), each reduced modulo H
  std::vector<ComplementCoord> members;
};

/// Offset (c_i) with c_i + b_i in X, reduced modulo H = X meet W.
inline FamilyPoint singular_offset(const AffineChart& chart, const Subspace& x, const Subspace& h_coords) {
  FamilyPoint c;
  for (std::size_t i = 0; i < chart.m(); ++i) {
    Subspace e_i = join(chart.W(), Subspace::span(chart.domain(), chart.ambient(), {chart.u_basis().row(i)}));
    Subspace cut = meet(e_i, x);
    std::optional<RowVector> ci;
    for (std::size_t r = 0; r < cut.dim() && !ci; ++r) {
      auto [wx, uy] = chart.split(cut.basis().row(r));
      if (!uy[i].is_zero()) ci = uy[i].inverse() * wx;
    }
    if (!ci) throw std::logic_error("singular_offset: hyperplane contains W");
    c.push_back(detail::reduce_mod(*ci, h_coords));
  }
  return c;
}

inline SingularSubspace singular_subspace(const AffineChart& chart, const Subspace& x) {
  detail::require_full(chart);
  if (x.ambient() != chart.ambient() || x.dim() + 1 != chart.ambient())
    throw std::invalid_argument("singular_subspace: X is not a hyperplane");
  if (chart.W().is_subspace_of(x)) throw std::invalid_argument("singular_subspace: X contains W");

  SingularSubspace out{x, meet(x, chart.W()), Subspace::zero(chart.domain(), chart.k()), {}, {}};
  out.h_coords = ZStructure(chart.w_basis()).coordinates(out.h);
  out.offset = singular_offset(chart, x, out.h_coords);
  for (auto& s : all_points(chart))
    if (s.subspace().is_subspace_of(x)) out.members.push_back(std::move(s));

  // (c_i) + H^I, enumerated entry by entry.
  const auto elems = enumerate_scalars(chart.domain(), "singular_subspace");
  std::vector<RowVector> h_elems;
  detail::for_each_vector(elems, out.h_coords.dim(), [&](const RowVector& t) {
    h_elems.push_back(out.h_coords.dim() ? act(t, out.h_coords.basis()) : zero_vector(chart.domain(), chart.k()));
  });
  std::vector<ComplementCoord> coset;
  std::vector<std::size_t> pick(chart.m(), 0);
  while (true) {
    FamilyPoint w = out.offset;
    for (std::size_t i = 0; i < chart.m(); ++i) w[i] = w[i] + h_elems[pick[i]];
    coset.push_back(psi(chart, w));
    std::size_t pos = chart.m();
    while (pos > 0 && ++pick[pos - 1] == h_elems.size()) pick[--pos] = 0;
    if (pos == 0) break;
  }
  if (detail::sorted_gammas(coset) != detail::sorted_gammas(out.members))
    throw std::logic_error("singular_subspace: S(X) differs from psi((c_i) + H^I)");
  if (!is_singular(out.members) || !is_affine_subspace(out.members))
    throw std::logic_error("singular_subspace: S(X) is not a singular affine subspace");
  return out;
}

/// X = psi((c_i)) (+) H for a hyperplane H of W (in W-coordinates).
inline Subspace hyperplane_from_coset(const AffineChart& chart, const Subspace& h_coords, const FamilyPoint& offset) {
  detail::require_full(chart);
  if (h_coords.ambient() != chart.k() || h_coords.dim() + 1 != chart.k())
    throw std::invalid_argument("hyperplane_from_coset: H must be a hyperplane of W");
  Subspace h(h_coords.basis() * chart.w_basis());
  return join(psi(chart, offset).subspace(), h);
}

// ---------------------------------------------------------------------------
// Dual spreads containing W

enum class SpreadViolation { none, ds1, ds2 };

struct DualSpreadReport {
  bool ok = true;
  SpreadViolation kind = SpreadViolation::none;
  std::string message;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  ///< first non-complementary pair
  std::optional<Subspace> hyperplane;                       ///< first uncovered hyperplane
};

/// Distinct entries are joined by regular lines; repeated entries fail.
inline DualSpreadReport check_ds1(const std::vector<ComplementCoord>& members) {
  DualSpreadReport r;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!are_complementary(members[i], members[j])) {
        r.ok = false;
        r.kind = SpreadViolation::ds1;
        r.pair = {i, j};
        r.message = "members " + std::to_string(i) + " and " + std::to_string(j) + " are not complementary";
        return r;
      }
  return r;
}

/// Each hyperplane X with W not in X contains a member; hyperplanes
/// through W contain W itself.
inline DualSpreadReport check_ds2(const AffineChart& chart, const std::vector<ComplementCoord>& members) {
  detail::require_full(chart);
  DualSpreadReport r;
  std::vector<Subspace> subs;
  for (const auto& m : members) subs.push_back(m.subspace());
  for (const auto& x : hyperplanes_not_containing(chart.W())) {
    bool covered = std::any_of(subs.begin(), subs.end(), [&](const Subspace& s) { return s.is_subspace_of(x); });
    if (!covered) {
      r.ok = false;
      r.kind = SpreadViolation::ds2;
      r.hyperplane = x;
      r.message = "hyperplane " + x.to_string() + " contains no member";
      return r;
    }
  }
  return r;
}

/// {W} u members is a dual spread. Refuses infinite domains.
inline DualSpreadReport is_dual_spread(const AffineChart& chart, const std::vector<ComplementCoord>& members) {
  if (!chart.domain().is_finite()) throw infinite_domain("is_dual_spread: hyperplane sweep over " + chart.domain().descriptor() + " refused");
  for (const auto& m : members) detail::check_same_chart(m.chart, chart);
  auto r = check_ds1(members);
  if (!r.ok) return r;
  return check_ds2(chart, members);
}

/// All dual spreads containing W of a symmetric chart over a finite field,
/// by backtracking over pairwise complementary point sets of size q^k.
inline std::vector<std::vector<ComplementCoord>> all_dual_spreads(const AffineChart& chart) {
  detail::require_full(chart);
  if (!chart.is_symmetric()) throw std::invalid_argument("all_dual_spreads: chart is not symmetric");
  const auto pts = all_points(chart);
  const auto q = *chart.domain().order();
  std::size_t target = 1;
  for (std::size_t i = 0; i < chart.k(); ++i) target *= q;
  std::vector<std::vector<ComplementCoord>> out;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (chosen.size() == target) {
      std::vector<ComplementCoord> cand;
      for (auto i : chosen) cand.push_back(pts[i]);
      if (check_ds2(chart, cand).ok) out.push_back(std::move(cand));
      return;
    }
    for (std::size_t i = start; i + (target - chosen.size()) <= pts.size(); ++i) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t j) { return are_complementary(pts[i], pts[j]); });
      if (!ok) continue;
      chosen.push_back(i);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return out;
}

/// Matrix of x -> x a on GF(p^e) over GF(p), w.r.t. the basis 1, x, ..., x^{e-1}:
/// row i holds the coordinates of x^i a.
inline Matrix multiplication_matrix(const Scalar& a, const ScalarDomain& prime) {
  const auto& ext = a.domain();
  if (ext.characteristic() != prime.characteristic() || prime.degree() != 1)
    throw domain_mismatch("multiplication_matrix: need GF(p) and an extension of it");
  const std::uint32_t p = ext.characteristic();
  const std::size_t e = ext.degree();
  Matrix out(prime, e, e);
  std::uint32_t xi = 1;
  for (std::size_t i = 0; i < e; ++i, xi *= p) {
    std::uint32_t idx = (ext.element(xi) * a).index();
    for (std::size_t j = 0; j < e; ++j, idx /= p) out(i, j) = prime.element(idx % p);
  }
  return out;
}

/// The regular spread {W} u {U^(gamma_a,1) | a in GF(p^e)}, gamma_a the
/// multiplication matrix of a, for a symmetric chart over GF(p) with k = e.
inline std::vector<ComplementCoord> regular_spread(const AffineChart& chart, const ScalarDomain& extension) {
  if (!chart.is_symmetric() || chart.k() != extension.degree())
    throw std::invalid_argument("regular_spread: need dim W = dim U = extension degree");
  std::vector<ComplementCoord> out;
  for (const auto& a : enumerate_scalars(extension, "regular_spread"))
    out.emplace_back(chart, multiplication_matrix(a, chart.domain()));
  return out;
}

// ---------------------------------------------------------------------------
// *-transversal families

/// Maps tau_i: D -> U, i indexing (b_i); vectors are (b_i)-coordinates and U
/// is identified with W through the chart's bases.
struct StarTransversalFamily {
  std::vector<RowVector> domain;              ///< D
  std::vector<std::vector<RowVector>> images;  ///< images[u][i] = u^{tau_i}
};

struct StarReport {
  bool ok = true;
  bool t1 = true;
  bool t2 = true;
  std::string message;
};

namespace detail {
inline void check_family_shape(const AffineChart& chart, const StarTransversalFamily& f) {
  if (!chart.is_symmetric()) throw std::invalid_argument("*-transversal families need a symmetric chart");
  if (f.domain.size() != f.images.size()) throw std::invalid_argument("family: one image row per element of D");
  for (std::size_t u = 0; u < f.domain.size(); ++u) {
    if (f.domain[u].size() != chart.m()) throw shape_mismatch("family: D must consist of vectors of U");
    if (f.images[u].size() != chart.m()) throw shape_mismatch("family: need one map tau_i per basis vector");
    for (const auto& v : f.images[u])
      if (v.size() != chart.m()) throw shape_mismatch("family: images must be vectors of U");
  }
}
}  // namespace detail

/// (T1*): for u != u' in D, (u^{tau_i} - u'^{tau_i})_i is a basis of U.
inline StarReport check_t1(const AffineChart& chart, const StarTransversalFamily& f) {
  detail::check_family_shape(chart, f);
  StarReport r;
  for (std::size_t a = 0; a < f.domain.size(); ++a)
    for (std::size_t b = a + 1; b < f.domain.size(); ++b) {
      std::string where = "elements " + std::to_string(a) + " and " + std::to_string(b) + " of D";
      if (f.domain[a] == f.domain[b]) {
        r = {false, false, true, where + " coincide"};
        return r;
      }
      std::vector<RowVector> diff;
      for (std::size_t i = 0; i < chart.m(); ++i) diff.push_back(f.images[a][i] - f.images[b][i]);
      if (!is_invertible(Matrix::from_rows(chart.domain(), diff, chart.m()))) {
        r = {false, false, true, "(T1*) fails for " + where};
        return r;
      }
    }
  return r;
}

/// W together with psi((u^{tau_i})_i), u in D.
inline std::vector<ComplementCoord> dual_spread_from_family(const AffineChart& chart, const StarTransversalFamily& f) {
  detail::check_family_shape(chart, f);
  std::vector<ComplementCoord> out;
  for (const auto& row : f.images) out.push_back(psi(chart, row));
  return out;
}

/// (T1*) over all pairs, then (T2*) through hyperplanes: every X with W not
/// in X must contain some psi((u^{tau_i})).
inline StarReport verify_star_family(const AffineChart& chart, const StarTransversalFamily& f) {
  auto r = check_t1(chart, f);
  if (!r.ok) return r;
  if (!chart.domain().is_finite()) throw infinite_domain("(T2*) needs a finite domain");
  auto ds2 = check_ds2(chart, dual_spread_from_family(chart, f));
  if (!ds2.ok) r = {false, true, false, "(T2*) fails: " + ds2.message};
  return r;
}

/// D = {s_{i0}} over the members (s_i) of the dual spread, tau_i(s_{i0}) = s_i.
/// Entries are sorted by u.
inline StarTransversalFamily family_from_dual_spread(const AffineChart& chart, const std::vector<ComplementCoord>& members,
                                                     std::size_t i0) {
  if (!chart.is_symmetric()) throw std::invalid_argument("family_from_dual_spread: chart is not symmetric");
  if (i0 >= chart.m()) throw std::out_of_range("family_from_dual_spread: index out of range");
  std::map<RowVector, FamilyPoint> table;
  for (const auto& m : members) {
    detail::check_same_chart(m.chart, chart);
    FamilyPoint s = psi_inv(m);
    if (!table.emplace(s[i0], s).second)
      throw std::invalid_argument("family_from_dual_spread: two members agree in entry " + std::to_string(i0));
  }
  StarTransversalFamily f;
  for (auto& [u, s] : table) {
    f.domain.push_back(u);
    f.images.push_back(std::move(s));
  }
  return f;
}

/// tau_{i0} is the inclusion D -> U.
inline bool is_normalized_at(const StarTransversalFamily& f, std::size_t i0) {
  for (std::size_t u = 0; u < f.domain.size(); ++u)
    if (i0 >= f.images[u].size() || !(f.images[u][i0] == f.domain[u])) return false;
  return true;
}

}  // namespace affcomp
