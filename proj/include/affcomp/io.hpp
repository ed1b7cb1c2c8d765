#pragma once

// JSON encodings. Finite-field scalars are integer indices (sum c_i p^i of
// the coefficients of the residue polynomial); quaternions are arrays of four
// rational strings [a, b, c, d] for a + bi + cj + dk.

#include <affcomp/dualspread.hpp>
#include <affcomp/reguli.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace affcomp::io {

using json = nlohmann::ordered_json;

class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(mpz_class(j.get<long>()));
  if (!j.is_string()) throw format_error("rational must be an integer or a string like \"-3/4\"");
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0) throw format_error("bad rational '" + j.get<std::string>() + "'");
  if (q.get_den() == 0) throw format_error("zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace detail

inline json to_json(const Scalar& s) {
  if (s.domain().is_finite()) return s.index();
  const auto& q = s.quaternion();
  return json::array({q.a.get_str(), q.b.get_str(), q.c.get_str(), q.d.get_str()});
}

/// Finite fields: an index 0 <= x < q, or any integer for a prime field.
/// Quaternions: [a, b, c, d] or a single rational.
inline Scalar scalar_from_json(const ScalarDomain& d, const json& j) {
  if (d.is_finite()) {
    if (!j.is_number_integer()) throw format_error("finite-field scalar must be an integer index");
    long v = j.get<long>();
    if (v >= 0 && static_cast<std::uint64_t>(v) < *d.order()) return d.element(static_cast<std::uint32_t>(v));
    if (d.degree() == 1) return d.from_int(v);
    throw format_error("scalar index " + std::to_string(v) + " out of range for " + d.descriptor());
  }
  if (j.is_array()) {
    if (j.size() != 4) throw format_error("quaternion must have four components");
    return d.quaternion(detail::rational_from_json(j[0]), detail::rational_from_json(j[1]),
                        detail::rational_from_json(j[2]), detail::rational_from_json(j[3]));
  }
  return d.quaternion(detail::rational_from_json(j), 0, 0, 0);
}

inline json to_json(const RowVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline RowVector vector_from_json(const ScalarDomain& d, const json& j, std::size_t len) {
  if (!j.is_array() || j.size() != len) throw format_error("expected a vector of length " + std::to_string(len));
  RowVector v;
  for (const auto& x : j) v.push_back(scalar_from_json(d, x));
  return v;
}

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline Matrix matrix_from_json(const ScalarDomain& d, const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw format_error("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  std::vector<RowVector> r;
  for (const auto& row : j) r.push_back(vector_from_json(d, row, cols));
  return Matrix::from_rows(d, r, cols);
}

/// Matrix with a known column count and any number of rows.
inline Matrix rows_from_json(const ScalarDomain& d, const json& j, std::size_t cols) {
  if (!j.is_array()) throw format_error("expected a list of rows");
  return matrix_from_json(d, j, j.size(), cols);
}

inline json to_json(const Subspace& s) { return json{{"ambient", s.ambient()}, {"rows", to_json(s.basis())}}; }

/// {"ambient": n, "rows": [...]} or a bare list of rows.
inline Subspace subspace_from_json(const ScalarDomain& d, const json& j, std::size_t ambient) {
  if (j.is_object()) {
    if (!j.contains("rows")) throw format_error("subspace object needs \"rows\"");
    if (j.contains("ambient") && j["ambient"].get<std::size_t>() != ambient)
      throw format_error("subspace ambient dimension does not match the chart");
    return Subspace(rows_from_json(d, j["rows"], ambient));
  }
  return Subspace(rows_from_json(d, j, ambient));
}

inline json to_json(const AffineChart& c) {
  return json{{"field", c.domain().descriptor()}, {"n", c.ambient()}, {"k", c.k()},
              {"W", to_json(c.w_basis())},     {"U", to_json(c.u_basis())}};
}

inline json subspace_list(const std::string& kind, std::size_t ambient, const std::vector<Subspace>& xs, bool sample) {
  json members = json::array();
  for (const auto& x : xs) members.push_back(to_json(x));
  json out{{"kind", kind}, {"ambient", ambient}, {"members", members}};
  if (sample) out["sample"] = true;
  return out;
}

inline json to_json(const Regulus& r, std::uint64_t seed = 0) {
  auto ms = r.members(seed);
  json out = subspace_list("regulus", r.chart().ambient(), ms.subspaces, ms.is_sample);
  out["chart"] = to_json(r.chart());
  out["alpha"] = to_json(r.alpha());
  out["beta"] = to_json(r.beta());
  return out;
}

inline json to_json(const TransversalSet& t, std::size_t ambient) {
  return subspace_list("transversals", ambient, t.lines, t.is_sample);
}

/// {"kind": "transversals", "members": [...]} or a bare list of subspaces.
inline TransversalSet transversals_from_json(const ScalarDomain& d, const json& j, std::size_t ambient) {
  const json& list = j.is_object() ? j.at("members") : j;
  if (!list.is_array()) throw format_error("transversal file must list subspaces");
  TransversalSet t;
  for (const auto& x : list) t.lines.push_back(subspace_from_json(d, x, ambient));
  return t;
}

/// A point given either as a gamma matrix (m x k) or as a subspace.
inline ComplementCoord point_from_json(const AffineChart& c, const json& j) {
  if (j.is_object()) return coordinatize(c, subspace_from_json(c.domain(), j, c.ambient()));
  if (j.is_array() && !j.empty() && j[0].is_array() && j[0].size() == c.ambient())
    return coordinatize(c, subspace_from_json(c.domain(), j, c.ambient()));
  return {c, matrix_from_json(c.domain(), j, c.m(), c.k())};
}

inline json dual_spread_to_json(const AffineChart& c, const std::vector<ComplementCoord>& members) {
  json gammas = json::array(), subs = json::array();
  for (const auto& m : members) {
    gammas.push_back(to_json(m.gamma));
    subs.push_back(to_json(m.subspace()));
  }
  return json{{"kind", "dual-spread"}, {"chart", to_json(c)}, {"includes_W", true},
              {"gammas", gammas},      {"members", subs}};
}

/// {"gammas": [...]} (preferred), {"members": [...]}, or a bare list of
/// points. Entries equal to W are skipped since W is always a member.
inline std::vector<ComplementCoord> dual_spread_from_json(const AffineChart& c, const json& j) {
  const json* list = &j;
  if (j.is_object()) {
    if (j.contains("gammas")) list = &j["gammas"];
    else if (j.contains("members")) list = &j["members"];
    else throw format_error("dual-spread file needs \"gammas\" or \"members\"");
  }
  if (!list->is_array()) throw format_error("dual-spread file must list points");
  const Subspace w = c.W();
  std::vector<ComplementCoord> out;
  for (const auto& x : *list) {
    bool as_subspace = x.is_object() || (x.is_array() && !x.empty() && x[0].is_array() && x[0].size() == c.ambient());
    if (as_subspace && subspace_from_json(c.domain(), x, c.ambient()) == w) continue;
    out.push_back(point_from_json(c, x));
  }
  return out;
}

inline json to_json(const StarTransversalFamily& f) {
  json entries = json::array();
  for (std::size_t u = 0; u < f.domain.size(); ++u) {
    json images = json::array();
    for (const auto& v : f.images[u]) images.push_back(to_json(v));
    entries.push_back(json{{"u", to_json(f.domain[u])}, {"images", images}});
  }
  return json{{"kind", "star-family"}, {"entries", entries}};
}

inline StarTransversalFamily family_from_json(const AffineChart& c, const json& j) {
  const json& entries = j.is_object() ? j.at("entries") : j;
  if (!entries.is_array()) throw format_error("family file needs a list of entries");
  StarTransversalFamily f;
  for (const auto& e : entries) {
    f.domain.push_back(vector_from_json(c.domain(), e.at("u"), c.m()));
    const json& imgs = e.at("images");
    if (!imgs.is_array() || imgs.size() != c.m()) throw format_error("each entry needs one image per basis vector");
    std::vector<RowVector> row;
    for (const auto& v : imgs) row.push_back(vector_from_json(c.domain(), v, c.k()));
    f.images.push_back(std::move(row));
  }
  return f;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw format_error("'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace affcomp::io
