#pragma once

// Batch commands behind the affcomp executable. Every command returns an exit
// code (0 success, 1 property violated, 2 usage or config error), a JSON
// report and a plain-text rendering of it.

#include <affcomp/io.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace affcomp::cli {

using io::json;

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kSuccess = 0, kViolated = 1, kUsage = 2 };

struct RunConfig {
  std::string field = "gf(2)";
  std::size_t n = 4;
  std::size_t k = 2;
  std::optional<json> w_rows;  ///< explicit W basis; default e_1..e_k
  std::optional<json> u_rows;  ///< explicit U basis; default e_{k+1}..e_n
  std::uint64_t seed = 0;
};

/// {"field": ..., "n": ..., "k": ..., "W": rows, "U": rows, "seed": ...};
/// every key is optional.
inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "field") c.field = value.get<std::string>();
      else if (key == "n") c.n = value.get<std::size_t>();
      else if (key == "k") c.k = value.get<std::size_t>();
      else if (key == "W") c.w_rows = value;
      else if (key == "U") c.u_rows = value;
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else throw config_error("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw config_error(std::string("bad config value: ") + e.what());
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  try {
    return config_from_json(io::read_json_file(path));
  } catch (const io::format_error& e) {
    throw config_error(e.what());
  }
}

inline AffineChart build_chart(const RunConfig& c) {
  try {
    const ScalarDomain& d = parse_field_spec(c.field);
    if (c.k == 0 || c.k >= c.n) throw config_error("need 0 < k < n");
    Matrix id = Matrix::identity(d, c.n);
    Matrix wb = c.w_rows ? io::rows_from_json(d, *c.w_rows, c.n) : id.row_block(0, c.k);
    Matrix ub = c.u_rows ? io::rows_from_json(d, *c.u_rows, c.n) : id.row_block(c.k, c.n - c.k);
    if (wb.rows() != c.k) throw config_error("W basis must have k rows");
    if (wb.rows() + ub.rows() != c.n) throw config_error("W and U bases must have n rows together");
    return {wb, ub};
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
}

struct Report {
  int exit_code = kSuccess;
  json data;
  std::string text;
};

namespace detail {

/// Inline JSON, or the contents of a file when the argument names one.
inline json json_argument(const std::string& arg) {
  if (std::filesystem::exists(arg)) return io::read_json_file(arg);
  try {
    return json::parse(arg);
  } catch (const json::exception&) {
    throw config_error("'" + arg + "' is neither a file nor valid JSON");
  }
}

inline void require_finite(const AffineChart& c, const char* what) {
  if (!c.domain().is_finite())
    throw infinite_domain(std::string(what) + ": " + c.domain().descriptor() + " is infinite and cannot be enumerated");
}

inline std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace detail

inline Report cmd_enumerate(const RunConfig& cfg) {
  AffineChart c = build_chart(cfg);
  detail::require_finite(c, "enumerate");
  auto pts = all_points(c);
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < c.k() * c.m(); ++i) expected *= *c.domain().order();
  bool ok = pts.size() == expected;
  json gammas = json::array();
  std::ostringstream text;
  text << "complements of W: " << pts.size() << " (q^(k(n-k)) = " << expected << ")\n";
  for (const auto& p : pts) {
    if (!(c.coordinatize(p.subspace()) == p.gamma)) ok = false;
    gammas.push_back(io::to_json(p.gamma));
    text << "  " << p.gamma.to_string() << "\n";
  }
  Report r;
  r.exit_code = ok ? kSuccess : kViolated;
  r.data = json{{"command", "enumerate"}, {"chart", io::to_json(c)}, {"count", pts.size()},
                {"expected", expected},   {"verified", ok},          {"gammas", gammas}};
  r.text = text.str();
  return r;
}

/// Lines through U are l(alpha, 0), alpha != 0 up to left scalars; alpha is
/// normalized so that its first nonzero entry (row-major) is 1.
inline Report cmd_classify_lines(const RunConfig& cfg) {
  AffineChart c = build_chart(cfg);
  detail::require_finite(c, "classify-lines");
  const auto& d = c.domain();
  const auto elems = enumerate_scalars(d, "classify-lines");
  const std::size_t m = c.m(), k = c.k();

  struct Tally {
    std::size_t regular = 0, exact = 0, non_exact = 0;
  };
  std::map<std::size_t, Tally> by_rank;
  Tally total;
  json lines = json::array();
  bool ok = true;
  for (const auto& flat : affcomp::detail::normalized_vectors(elems, m * k)) {
    Matrix alpha(d, m, k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) alpha(i, j) = flat[i * k + j];
    AffineLine line(c, alpha, Matrix(d, m, k));
    const std::size_t rk = rank(alpha);
    std::string cls;
    json entry{{"alpha", io::to_json(alpha)}, {"rank", rk}};
    if (c.is_symmetric() && is_regular(line)) {
      cls = "regular";
      ++by_rank[rk].regular;
      ++total.regular;
    } else {
      ConeDecomposition cd = cone_decompose(line);
      for (const auto& p : points(line).points)
        if (!cd.vertex.is_subspace_of(p.subspace())) ok = false;
      cls = cd.exact ? "exact-cone" : "non-exact-cone";
      if (cd.exact) ++by_rank[rk].exact, ++total.exact;
      else ++by_rank[rk].non_exact, ++total.non_exact;
      entry["vertex_dim"] = cd.vertex.dim();
      entry["kernel_dim"] = cd.kernel.dim();
    }
    entry["class"] = cls;
    lines.push_back(entry);
  }

  json ranks = json::array();
  std::ostringstream text;
  const std::size_t count = lines.size();
  text << "lines through U: " << count << "\n";
  for (const auto& [rk, t] : by_rank) {
    ranks.push_back(json{{"rank", rk}, {"regular", t.regular}, {"exact-cone", t.exact}, {"non-exact-cone", t.non_exact}});
    text << "  rank " << rk << ": regular " << t.regular << ", exact cone " << t.exact << ", non-exact cone "
         << t.non_exact << "\n";
  }
  text << "total: regular " << total.regular << ", exact cone " << total.exact << ", non-exact cone "
       << total.non_exact << "\n";
  Report r;
  r.data = json{{"command", "classify-lines"},
                {"chart", io::to_json(c)},
                {"lines", count},
                {"classes", {{"regular", total.regular}, {"exact-cone", total.exact}, {"non-exact-cone", total.non_exact}}},
                {"by_rank", ranks}};
  if (!c.is_symmetric()) {
    r.data["notice"] = "dim W != dim U: no line is regular";
    text << "notice: dim W != dim U, so the regular class is empty\n";
  }
  r.data["vertex_in_every_point"] = ok;
  r.data["entries"] = lines;
  r.exit_code = ok ? kSuccess : kViolated;
  r.text = text.str();
  return r;
}

inline Report cmd_regulus_through(const RunConfig& cfg, const std::string& a, const std::string& b) {
  AffineChart c = build_chart(cfg);
  ComplementCoord u1 = io::point_from_json(c, detail::json_argument(a));
  ComplementCoord u2 = io::point_from_json(c, detail::json_argument(b));
  Report r;
  r.data = json{{"command", "regulus"}, {"chart", io::to_json(c)}};
  if (!c.is_symmetric()) throw config_error("regulus needs dim W = dim U");
  if (!are_complementary(u1, u2)) {
    r.exit_code = kViolated;
    r.data["result"] = "FAIL";
    r.data["reason"] = "the two points are not complementary";
    r.text = "FAIL: the two points are not complementary\n";
    return r;
  }
  Regulus reg = regulus_through(u1, u2);
  auto ms = reg.members(cfg.seed);
  auto ts = transversals_of(reg);
  bool pairwise = true, incidence = true;
  for (std::size_t i = 0; i < ms.subspaces.size(); ++i)
    for (std::size_t j = i + 1; j < ms.subspaces.size(); ++j)
      if (!is_complement(ms.subspaces[i], ms.subspaces[j])) pairwise = false;
  for (const auto& t : ts.lines)
    for (const auto& x : ms.subspaces)
      if (meet(t, x).dim() != 1) incidence = false;
  bool through = reg.contains(c.W()) && reg.contains(u1.subspace()) && reg.contains(u2.subspace());
  bool wz = w_plus_transversals_match(reg, c);
  bool ok = pairwise && incidence && through && wz;
  r.exit_code = ok ? kSuccess : kViolated;
  r.data["result"] = detail::pass_fail(ok);
  r.data["checks"] = json{{"contains_W_U1_U2", through},
                          {"pairwise_complementary", pairwise},
                          {"transversal_incidence", incidence},
                          {"W_plus_T_equals_W_plus_ZU", wz}};
  r.data["regulus"] = io::to_json(reg, cfg.seed);
  r.data["transversals"] = io::to_json(ts, c.ambient());
  std::ostringstream text;
  text << detail::pass_fail(ok) << ": regulus through W, U1, U2 with " << ms.subspaces.size()
       << (ms.is_sample ? " sampled" : "") << " members and " << ts.lines.size() << " transversals\n";
  for (const auto& x : ms.subspaces) text << "  " << x.to_string() << "\n";
  r.text = text.str();
  return r;
}

inline Report cmd_reconstruct(const RunConfig& cfg, const std::string& file) {
  AffineChart c = build_chart(cfg);
  detail::require_finite(c, "reconstruct");
  TransversalSet t = io::transversals_from_json(c.domain(), io::read_json_file(file), c.ambient());
  Report r;
  r.data = json{{"command", "reconstruct"}};
  try {
    Regulus reg = reconstruct_from_transversals(t);
    r.data["result"] = "PASS";
    r.data["regulus"] = io::to_json(reg);
    std::ostringstream text;
    text << "PASS: regulus with " << reg.members().subspaces.size() << " members\n";
    for (const auto& x : reg.members().subspaces) text << "  " << x.to_string() << "\n";
    r.text = text.str();
  } catch (const reconstruction_failed& e) {
    r.exit_code = kViolated;
    r.data["result"] = "FAIL";
    r.data["reason"] = e.what();
    r.text = std::string("FAIL: ") + e.what() + "\n";
  }
  return r;
}

namespace detail {
inline json violation_json(const DualSpreadReport& rep) {
  if (rep.ok) return nullptr;
  json v{{"kind", rep.kind == SpreadViolation::ds1 ? "DS1" : "DS2"}, {"message", rep.message}};
  if (rep.pair) v["pair"] = json::array({rep.pair->first, rep.pair->second});
  if (rep.hyperplane) v["hyperplane"] = io::to_json(*rep.hyperplane);
  return v;
}
}  // namespace detail

inline Report cmd_check_dual_spread(const RunConfig& cfg, const std::string& file) {
  AffineChart c = build_chart(cfg);
  auto members = io::dual_spread_from_json(c, io::read_json_file(file));
  auto rep = is_dual_spread(c, members);
  Report r;
  r.exit_code = rep.ok ? kSuccess : kViolated;
  r.data = json{{"command", "check-dual-spread"},
                {"members", members.size() + 1},
                {"result", detail::pass_fail(rep.ok)},
                {"violation", detail::violation_json(rep)}};
  r.text = detail::pass_fail(rep.ok) + ": " + std::to_string(members.size() + 1) + " members including W" +
           (rep.ok ? "" : " (" + std::string(rep.kind == SpreadViolation::ds1 ? "DS1" : "DS2") + ": " + rep.message + ")") +
           "\n";
  return r;
}

/// The report carries the generated file under "output".
inline Report cmd_build_dual_spread(const RunConfig& cfg, const std::string& family_file) {
  AffineChart c = build_chart(cfg);
  auto fam = io::family_from_json(c, io::read_json_file(family_file));
  auto star = verify_star_family(c, fam);
  Report r;
  r.data = json{{"command", "build-dual-spread"}, {"t1", star.t1}, {"t2", star.t2}};
  if (!star.ok) {
    r.exit_code = kViolated;
    r.data["result"] = "FAIL";
    r.data["reason"] = star.message;
    r.text = "FAIL: " + star.message + "\n";
    return r;
  }
  auto members = dual_spread_from_family(c, fam);
  auto recheck = is_dual_spread(c, members);
  r.exit_code = recheck.ok ? kSuccess : kViolated;
  r.data["result"] = detail::pass_fail(recheck.ok);
  r.data["recheck"] = detail::pass_fail(recheck.ok);
  r.data["output"] = io::dual_spread_to_json(c, members);
  r.text = detail::pass_fail(recheck.ok) + ": family satisfies (T1*) and (T2*); dual spread with " +
           std::to_string(members.size() + 1) + " members including W\n";
  return r;
}

/// `index` is 1-based, matching the basis b_1, ..., b_m.
inline Report cmd_extract_family(const RunConfig& cfg, const std::string& file, std::size_t index) {
  AffineChart c = build_chart(cfg);
  if (index == 0 || index > c.m()) throw config_error("--index must be between 1 and dim U");
  auto members = io::dual_spread_from_json(c, io::read_json_file(file));
  auto rep = is_dual_spread(c, members);
  Report r;
  r.data = json{{"command", "extract-family"}, {"index", index}};
  if (!rep.ok) {
    r.exit_code = kViolated;
    r.data["result"] = "FAIL";
    r.data["violation"] = detail::violation_json(rep);
    r.text = "FAIL: input is not a dual spread (" + rep.message + ")\n";
    return r;
  }
  auto fam = family_from_dual_spread(c, members, index - 1);
  auto star = verify_star_family(c, fam);
  r.exit_code = star.ok ? kSuccess : kViolated;
  r.data["result"] = detail::pass_fail(star.ok);
  r.data["output"] = io::to_json(fam);
  r.text = detail::pass_fail(star.ok) + ": family with |D| = " + std::to_string(fam.domain.size()) + " at index " +
           std::to_string(index) + "\n";
  return r;
}

}  // namespace affcomp::cli
