#pragma once

// Brute-force reference computations over finite fields. Subspaces are
// materialized as sets of vectors; nothing here uses echelon forms.

#include <affcomp/algebra.hpp>
#include <affcomp/linalg.hpp>

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using affcomp::Matrix;
using affcomp::RowVector;
using affcomp::Scalar;
using affcomp::ScalarDomain;

using Vec = std::vector<std::uint32_t>;
using VecSet = std::set<Vec>;

inline Vec key(const RowVector& v) {
  Vec out;
  for (const auto& x : v) out.push_back(x.index());
  return out;
}

inline std::vector<Scalar> elements(const ScalarDomain& d) {
  std::vector<Scalar> out;
  for (std::uint32_t i = 0; i < *d.order(); ++i) out.push_back(d.element(i));
  return out;
}

/// Every vector of K^n.
inline std::vector<RowVector> all_vectors(const ScalarDomain& d, std::size_t n) {
  const auto el = elements(d);
  std::vector<RowVector> out{RowVector{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RowVector> next;
    for (const auto& v : out)
      for (const auto& x : el) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// All K-combinations of the generators.
inline VecSet span(const ScalarDomain& d, const std::vector<RowVector>& gens, std::size_t n) {
  VecSet out;
  for (const auto& coeffs : all_vectors(d, gens.size())) {
    RowVector v(n, d.zero());
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::size_t j = 0; j < n; ++j) v[j] = v[j] + coeffs[g] * gens[g][j];
    out.insert(key(v));
  }
  return out;
}

inline VecSet span(const Matrix& rows) { return span(rows.domain(), rows.row_list(), rows.cols()); }

inline VecSet intersection(const VecSet& a, const VecSet& b) {
  VecSet out;
  for (const auto& v : a)
    if (b.count(v)) out.insert(v);
  return out;
}

inline bool subset(const VecSet& a, const VecSet& b) {
  for (const auto& v : a)
    if (!b.count(v)) return false;
  return true;
}

/// log_q |S|.
inline std::size_t dim(const VecSet& s, std::uint32_t q) {
  std::size_t d = 0;
  for (std::size_t size = 1; size < s.size(); size *= q) ++d;
  return d;
}

/// Rows (gamma_i | e_i) span U^(gamma,1) in the standard chart.
inline VecSet standard_complement(const Matrix& gamma) {
  const auto& d = gamma.domain();
  const std::size_t m = gamma.rows(), k = gamma.cols();
  std::vector<RowVector> gens;
  for (std::size_t i = 0; i < m; ++i) {
    RowVector v(k + m, d.zero());
    for (std::size_t j = 0; j < k; ++j) v[j] = gamma(i, j);
    v[k + i] = d.one();
    gens.push_back(v);
  }
  return span(d, gens, k + m);
}

/// Leibniz determinant; commutative fields only.
inline Scalar det(const Matrix& a) {
  const auto& d = a.domain();
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = d.zero();
  do {
    Scalar term = d.one();
    for (std::size_t i = 0; i < perm.size(); ++i) term = term * a(i, perm[i]);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// {v : sum v_i f_i = 0}.
inline VecSet hyperplane(const RowVector& form) {
  const auto& d = form.front().domain();
  VecSet out;
  for (const auto& v : all_vectors(d, form.size())) {
    Scalar s = d.zero();
    for (std::size_t i = 0; i < form.size(); ++i) s = s + v[i] * form[i];
    if (s.is_zero()) out.insert(key(v));
  }
  return out;
}

/// Every hyperplane of K^n, from all nonzero forms.
inline std::set<VecSet> all_hyperplanes(const ScalarDomain& d, std::size_t n) {
  std::set<VecSet> out;
  for (const auto& f : all_vectors(d, n)) {
    bool nonzero = false;
    for (const auto& x : f) nonzero = nonzero || !x.is_zero();
    if (nonzero) out.insert(hyperplane(f));
  }
  return out;
}

/// Every subspace of K^n of the given dimension, from spans of generator tuples.
inline std::set<VecSet> all_subspaces(const ScalarDomain& d, std::size_t n, std::size_t dimension) {
  const auto vs = all_vectors(d, n);
  const std::uint32_t q = *d.order();
  std::set<VecSet> out;
  std::vector<std::size_t> idx(dimension, 0);
  while (true) {
    std::vector<RowVector> gens;
    for (auto i : idx) gens.push_back(vs[i]);
    auto s = span(d, gens, n);
    if (dim(s, q) == dimension) out.insert(std::move(s));
    std::size_t pos = dimension;
    while (pos > 0 && ++idx[pos - 1] == vs.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

/// {W} u members is a dual spread, by brute force over all hyperplanes.
inline bool is_dual_spread(const ScalarDomain& d, const VecSet& w, const std::vector<VecSet>& members, std::size_t n) {
  const std::uint32_t q = *d.order();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (dim(intersection(members[i], w), q) != 0) return false;
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (dim(intersection(members[i], members[j]), q) != 0) return false;
  }
  for (const auto& x : all_hyperplanes(d, n)) {
    if (subset(w, x)) continue;
    bool covered = false;
    for (const auto& s : members) covered = covered || subset(s, x);
    if (!covered) return false;
  }
  return true;
}

}  // namespace oracle
