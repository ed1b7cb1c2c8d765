#pragma once

// The subspace lattice of K^n: canonical subspaces, complements, hyperplanes,
// and the central subspaces defined by a reference basis (b_i).

#include <affcomp/linalg.hpp>

#include <algorithm>
#include <set>
#include <vector>

namespace affcomp {

/// A subspace of K^n stored by its unique left-reduced echelon basis, so two
/// subspaces are equal exactly when their bases are equal.
class Subspace {
 public:
  /// Row space of `rows` (rows need not be independent).
  explicit Subspace(const Matrix& rows) : basis_(rref_left(rows).reduced) {}

  static Subspace span(const ScalarDomain& d, std::size_t ambient, const std::vector<RowVector>& rows) {
    return Subspace(Matrix::from_rows(d, rows, ambient));
  }
  static Subspace zero(const ScalarDomain& d, std::size_t ambient) { return Subspace(Matrix(d, 0, ambient)); }
  static Subspace whole(const ScalarDomain& d, std::size_t ambient) {
    return Subspace(Matrix::identity(d, ambient));
  }
  /// Span of the unit vectors e_i, i in `indices`.
  static Subspace coordinate(const ScalarDomain& d, std::size_t ambient, const std::vector<std::size_t>& indices) {
    std::vector<RowVector> rows;
    for (auto i : indices) rows.push_back(unit_vector(d, ambient, i));
    return span(d, ambient, rows);
  }

  const ScalarDomain& domain() const { return basis_.domain(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const RowVector& v) const {
    if (v.size() != ambient()) throw shape_mismatch("vector not in the ambient space");
    if (is_zero_vector(v)) return true;
    return rank(stack(basis_, Matrix::from_rows(domain(), {v}, ambient()))) == dim();
  }
  /// this <= other
  bool is_subspace_of(const Subspace& other) const {
    check_ambient(other);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!other.contains(basis_.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) { return a.basis_ <=> b.basis_; }

  void check_ambient(const Subspace& other) const {
    if (ambient() != other.ambient() || &domain() != &other.domain())
      throw shape_mismatch("subspaces live in different ambient spaces");
  }

  std::string to_string() const { return "<" + basis_.to_string() + ">"; }

 private:
  Matrix basis_;
};

inline std::ostream& operator<<(std::ostream& os, const Subspace& s) { return os << s.to_string(); }

enum class LatticeOp { sum, intersect };

inline Subspace join(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  return Subspace(stack(a.basis(), b.basis()));
}

/// a meet b, through the kernel of the stacked bases: (x, y) with
/// x A + y B = 0 gives x A in the intersection.
inline Subspace meet(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.domain(), a.ambient());
  Matrix ker = kernel(stack(a.basis(), b.basis()));
  Matrix coeffs = ker.col_block(0, a.dim());
  return Subspace(coeffs * a.basis());
}

inline Subspace lattice(LatticeOp op, const Subspace& a, const Subspace& b) {
  return op == LatticeOp::sum ? join(a, b) : meet(a, b);
}

/// V = W (+) S inside the ambient space `v`.
inline bool is_complement_in(const Subspace& v, const Subspace& w, const Subspace& s) {
  v.check_ambient(w);
  v.check_ambient(s);
  if (!w.is_subspace_of(v) || !s.is_subspace_of(v)) return false;
  return w.dim() + s.dim() == v.dim() && meet(w, s).dim() == 0;
}

/// K^n = W (+) S.
inline bool is_complement(const Subspace& w, const Subspace& s) {
  w.check_ambient(s);
  return meet(w, s).dim() == 0 && join(w, s).dim() == w.ambient();
}

/// Matrix C with A = {v : v C = 0}; its columns are right-linear forms.
inline Matrix annihilator(const Subspace& a) {
  const std::size_t n = a.ambient();
  const auto& d = a.domain();
  auto pivots = rref_left(a.basis()).pivots;
  Matrix p = a.basis();
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
      p = stack(p, Matrix::from_rows(d, {unit_vector(d, n, c)}, n));
  auto pinv = inverse(p);
  if (!pinv) throw std::logic_error("annihilator: extended basis is singular");
  return pinv->col_block(a.dim(), n - a.dim());
}

/// The complement of `a` spanned by unit vectors, chosen greedily by index.
inline Subspace coordinate_complement(const Subspace& a) {
  Subspace acc = a;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < a.ambient() && acc.dim() < a.ambient(); ++i) {
    auto e = unit_vector(a.domain(), a.ambient(), i);
    if (!acc.contains(e)) {
      chosen.push_back(i);
      acc = join(acc, Subspace::coordinate(a.domain(), a.ambient(), {i}));
    }
  }
  return Subspace::coordinate(a.domain(), a.ambient(), chosen);
}

// ---------------------------------------------------------------------------
// Enumeration over finite domains

namespace detail {

/// Calls f on every vector of K^len (last coordinate fastest).
template <class F>
void for_each_vector(const std::vector<Scalar>& elems, std::size_t len, F&& f) {
  const ScalarDomain& d = elems.front().domain();
  std::vector<std::size_t> idx(len, 0);
  RowVector v(len, d.zero());
  while (true) {
    for (std::size_t i = 0; i < len; ++i) v[i] = elems[idx[i]];
    f(v);
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < elems.size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (len == 0) return;
  }
}

/// Vectors of K^len whose first nonzero coordinate is 1, one per
/// projective point, over the given element list.
inline std::vector<RowVector> normalized_vectors(const std::vector<Scalar>& elems, std::size_t len) {
  std::vector<RowVector> out;
  for_each_vector(elems, len, [&](const RowVector& v) {
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      if (x.is_one()) out.push_back(v);
      return;
    }
  });
  return out;
}

}  // namespace detail

/// All 1-dimensional subspaces of `a`.
inline std::vector<Subspace> projective_points(const Subspace& a) {
  const auto elems = enumerate_scalars(a.domain(), "projective_points");
  std::vector<Subspace> out;
  for (const auto& c : detail::normalized_vectors(elems, a.dim()))
    out.push_back(Subspace::span(a.domain(), a.ambient(), {act(c, a.basis())}));
  return out;
}

/// Every complement S of W in K^n, each exactly once (q^{k(n-k)} of them).
/// W = 0 and W = K^n are refused.
inline std::vector<Subspace> all_complements(const Subspace& w) {
  const auto& d = w.domain();
  const std::size_t n = w.ambient(), k = w.dim();
  if (k == 0 || k == n) throw std::invalid_argument("all_complements: W must be a proper nonzero subspace");
  const auto elems = enumerate_scalars(d, "all_complements");
  const Subspace u = coordinate_complement(w);
  const std::size_t m = n - k;
  std::vector<Subspace> out;
  detail::for_each_vector(elems, m * k, [&](const RowVector& flat) {
    Matrix gamma(d, m, k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) gamma(i, j) = flat[i * k + j];
    out.emplace_back(gamma * w.basis() + u.basis());
  });
  return out;
}

/// Hyperplane {v : v c = 0} of the right-linear form c (a column).
inline Subspace hyperplane_of_form(const RowVector& column) {
  const auto& d = column.front().domain();
  Matrix c(d, column.size(), 1);
  for (std::size_t i = 0; i < column.size(); ++i) c(i, 0) = column[i];
  return Subspace(kernel(c));
}

/// All (q^n - 1)/(q - 1) hyperplanes of K^n, one per right-proportionality
/// class of nonzero forms; forms are normalized so their first nonzero
/// coefficient is 1.
inline std::vector<Subspace> hyperplanes(const ScalarDomain& d, std::size_t n) {
  const auto elems = enumerate_scalars(d, "hyperplanes");
  std::vector<Subspace> out;
  for (const auto& c : detail::normalized_vectors(elems, n)) out.push_back(hyperplane_of_form(c));
  return out;
}

inline std::vector<Subspace> hyperplanes_not_containing(const Subspace& w) {
  std::vector<Subspace> out;
  for (auto& x : hyperplanes(w.domain(), w.ambient()))
    if (!w.is_subspace_of(x)) out.push_back(std::move(x));
  return out;
}

// ---------------------------------------------------------------------------
// Central subspaces

/// The reference basis (b_i) of a subspace together with its Z-span, the set
/// of Z-linear combinations of the b_i.
class ZStructure {
 public:
  explicit ZStructure(Matrix reference) : reference_(std::move(reference)) {
    if (rank(reference_) != reference_.rows()) throw std::invalid_argument("ZStructure: reference vectors are dependent");
  }

  const Matrix& reference_basis() const { return reference_; }
  const ScalarDomain& domain() const { return reference_.domain(); }
  std::size_t size() const { return reference_.rows(); }
  Subspace span() const { return Subspace(reference_); }

  /// Coordinates of v w.r.t. (b_i); throws if v is outside the span.
  RowVector coordinates(const RowVector& v) const {
    auto x = solve_left(reference_, v);
    if (!x) throw std::invalid_argument("vector is not in the span of the reference basis");
    return *x;
  }
  /// The subspace of K^size() formed by coordinates of the elements of `a`.
  Subspace coordinates(const Subspace& a) const {
    std::vector<RowVector> rows;
    for (std::size_t i = 0; i < a.dim(); ++i) rows.push_back(coordinates(a.basis().row(i)));
    return Subspace::span(domain(), size(), rows);
  }
  RowVector vector_from(const RowVector& coords) const { return act(coords, reference_); }
  Subspace subspace_from(const Subspace& coords) const { return Subspace(coords.basis() * reference_); }

  /// True iff the point K v belongs to the projective Z-subspace.
  bool contains_point(const RowVector& v) const { return is_central_direction(coordinates(v)); }

  /// Whether some left multiple of the coordinate vector x is central.
  static bool is_central_direction(const RowVector& x) {
    auto it = std::find_if(x.begin(), x.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == x.end()) return false;
    Scalar inv = it->inverse();
    return std::all_of(x.begin(), x.end(), [&](const Scalar& s) { return is_central(inv * s); });
  }

 private:
  Matrix reference_;
};

namespace detail {

inline void require_inside(const Subspace& a, const ZStructure& z) {
  if (!a.is_subspace_of(z.span())) throw std::invalid_argument("subspace is not inside the reference span");
}

}  // namespace detail

/// The largest central subspace of `a`: the K-span of (a meet Z-span of b).
/// Computed by expanding K over Z and solving the resulting Z-linear system.
inline Subspace maximal_central_subspace(const Subspace& a, const ZStructure& z) {
  detail::require_inside(a, z);
  const auto& d = a.domain();
  const Subspace ac = z.coordinates(a);
  const std::size_t m = z.size();
  if (ac.dim() == m) return z.span();
  const Matrix c = annihilator(ac);  // m x (m - dim)
  const std::size_t deg = d.center_degree();
  Matrix expanded(d, m, c.cols() * deg);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      auto parts = center_components(c(i, j));
      for (std::size_t t = 0; t < deg; ++t) expanded(i, j * deg + t) = parts[t];
    }
  // Central coefficient vectors z with z C = 0; the kernel of a matrix with
  // central entries has a central echelon basis.
  return z.subspace_from(Subspace(kernel(expanded)));
}

inline bool is_central_subspace(const Subspace& a, const ZStructure& z) { return maximal_central_subspace(a, z) == a; }

/// Indices J of reference vectors with a (+) span(b_j : j in J) = span(b),
/// added greedily, smallest index first.
inline std::vector<std::size_t> central_complement_indices(const Subspace& a, const ZStructure& z) {
  detail::require_inside(a, z);
  Subspace acc = a;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < z.size() && acc.dim() < z.size(); ++i) {
    RowVector b = z.reference_basis().row(i);
    if (!acc.contains(b)) {
      chosen.push_back(i);
      acc = join(acc, Subspace::span(a.domain(), a.ambient(), {b}));
    }
  }
  return chosen;
}

/// A central C with a (+) C = span(b).
inline Subspace central_complement(const Subspace& a, const ZStructure& z) {
  std::vector<RowVector> rows;
  for (auto i : central_complement_indices(a, z)) rows.push_back(z.reference_basis().row(i));
  return Subspace::span(a.domain(), a.ambient(), rows);
}

/// Sorted, duplicate-free copy.
inline std::vector<Subspace> canonical_set(std::vector<Subspace> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace affcomp
