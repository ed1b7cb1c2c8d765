#include <affcomp/cli.hpp>

#include <catch_amalgamated.hpp>

#include "generators.hpp"

using namespace affcomp;
using cli::json;

namespace {

std::string config_path(const std::string& name) { return std::string(AFFCOMP_CONFIG_DIR) + "/" + name; }
std::string scratch_path(const std::string& name) { return std::string(AFFCOMP_SCRATCH_DIR) + "/" + name; }

cli::RunConfig config(const std::string& field, std::size_t n, std::size_t k) {
  cli::RunConfig c;
  c.field = field;
  c.n = n;
  c.k = k;
  return c;
}

}  // namespace

TEST_CASE("scalars, matrices and subspaces survive JSON", "[cli]") {
  std::mt19937_64 rng(83);
  for (const ScalarDomain* d : {&ScalarDomain::prime_field(3), &parse_field_spec("gf(2^2; modulus=[1,1,1])"),
                                &ScalarDomain::quaternions()}) {
    for (int t = 0; t < 20; ++t) {
      Matrix m = gen::matrix(*d, 2, 3, rng);
      REQUIRE(io::matrix_from_json(*d, json::parse(io::to_json(m).dump()), 2, 3) == m);
      Subspace s(m);
      REQUIRE(io::subspace_from_json(*d, io::to_json(s), 3) == s);
    }
  }
  const auto& h = ScalarDomain::quaternions();
  const std::string encoded = R"(["1/2","-1","0","3"])";
  REQUIRE(io::to_json(h.quaternion(mpq_class(1) / 2, -1, 0, 3)).dump() == encoded);
  REQUIRE(io::scalar_from_json(h, json("-3/4")) == h.quaternion(mpq_class(-3) / 4, 0, 0, 0));
  REQUIRE(io::scalar_from_json(ScalarDomain::prime_field(3), json(-1)).index() == 2);
  REQUIRE_THROWS_AS(io::scalar_from_json(h, json("1/0")), io::format_error);
  REQUIRE_THROWS_AS(io::scalar_from_json(parse_field_spec("gf(2^2; modulus=[1,1,1])"), json(4)), io::format_error);
  REQUIRE_THROWS_AS(io::matrix_from_json(h, json::parse("[[1,2]]"), 2, 2), io::format_error);
}

TEST_CASE("dual spreads and families survive JSON", "[cli]") {
  auto c = AffineChart::standard(ScalarDomain::prime_field(2), 4, 2);
  auto spread = regular_spread(c, parse_field_spec("gf(2^2; modulus=[1,1,1])"));
  auto back = io::dual_spread_from_json(c, io::dual_spread_to_json(c, spread));
  REQUIRE(detail::sorted_gammas(back) == detail::sorted_gammas(spread));
  // The "members" form lists W explicitly; it is skipped on input.
  json subs = json::array({io::to_json(c.W())});
  for (const auto& p : spread) subs.push_back(io::to_json(p.subspace()));
  REQUIRE(detail::sorted_gammas(io::dual_spread_from_json(c, json{{"members", subs}})) == detail::sorted_gammas(spread));
  REQUIRE_THROWS_AS(io::dual_spread_from_json(c, json{{"spread", 1}}), io::format_error);

  auto fam = family_from_dual_spread(c, spread, 0);
  auto fam2 = io::family_from_json(c, io::to_json(fam));
  REQUIRE(fam2.domain == fam.domain);
  REQUIRE(fam2.images == fam.images);
}

TEST_CASE("configs are validated", "[cli]") {
  auto c = cli::load_config(config_path("gf3_n3_k1.json"));
  REQUIRE(c.field == "gf(3)");
  REQUIRE(c.n == 3);
  REQUIRE(c.k == 1);
  REQUIRE(cli::build_chart(c).m() == 2);

  const auto unknown_key = json::parse(R"j({"field":"gf(2)","dims":4})j");
  const auto bad_value = json::parse(R"({"n":"four"})");
  REQUIRE_THROWS_AS(cli::config_from_json(unknown_key), cli::config_error);
  REQUIRE_THROWS_AS(cli::config_from_json(bad_value), cli::config_error);
  REQUIRE_THROWS_AS(cli::config_from_json(json::parse("[1]")), cli::config_error);
  REQUIRE_THROWS_AS(cli::load_config(config_path("missing.json")), cli::config_error);
  REQUIRE_THROWS_AS(cli::build_chart(config("gf(4)", 4, 2)), cli::config_error);
  REQUIRE_THROWS_AS(cli::build_chart(config("gf(2)", 4, 4)), cli::config_error);

  auto skew = cli::config_from_json(json::parse(R"j({"field":"gf(2)","n":3,"k":1,"W":[[1,1,0]],"U":[[1,0,0],[0,0,1]]})j"));
  auto chart = cli::build_chart(skew);
  REQUIRE(chart.W() == Subspace::span(ScalarDomain::prime_field(2), 3, {{ScalarDomain::prime_field(2).one(),
                                                                         ScalarDomain::prime_field(2).one(),
                                                                         ScalarDomain::prime_field(2).zero()}}));
  auto clash = cli::config_from_json(json::parse(R"j({"field":"gf(2)","n":3,"k":1,"W":[[1,0,0]],"U":[[1,0,0],[0,0,1]]})j"));
  REQUIRE_THROWS_AS(cli::build_chart(clash), cli::config_error);
}

TEST_CASE("enumerate counts q^(k(n-k)) complements", "[cli]") {
  auto r2 = cli::cmd_enumerate(config("gf(2)", 4, 2));
  REQUIRE(r2.exit_code == cli::kSuccess);
  REQUIRE(r2.data["count"] == 16);
  REQUIRE(r2.data["gammas"].size() == 16);
  REQUIRE(r2.text.rfind("complements of W: 16", 0) == 0);
  REQUIRE(cli::cmd_enumerate(config("gf(3)", 4, 2)).data["count"] == 81);
  REQUIRE(cli::cmd_enumerate(config("gf(3)", 3, 1)).data["count"] == 9);
  REQUIRE(cli::cmd_enumerate(config("gf(2^2; modulus=[1,1,1])", 4, 2)).data["count"] == 256);
  REQUIRE_THROWS_AS(cli::cmd_enumerate(config("quat(Q)", 4, 2)), infinite_domain);
  REQUIRE_THROWS_AS(cli::cmd_classify_lines(config("quat(Q)", 4, 2)), infinite_domain);
}

TEST_CASE("classify-lines accounts for every line through U", "[cli]") {
  for (std::uint32_t q : {2u, 3u}) {
    auto r = cli::cmd_classify_lines(config("gf(" + std::to_string(q) + ")", 4, 2));
    REQUIRE(r.exit_code == cli::kSuccess);
    // (q^4 - 1) / (q - 1) directions
    const std::size_t lines = (q * q * q * q - 1) / (q - 1);
    REQUIRE(r.data["lines"] == lines);
    const auto& cls = r.data["classes"];
    REQUIRE(cls["regular"].get<std::size_t>() + cls["exact-cone"].get<std::size_t>() +
                cls["non-exact-cone"].get<std::size_t>() ==
            lines);
    // invertible 2x2 matrices up to scalars: (q^2-1)(q^2-q)/(q-1)
    REQUIRE(cls["regular"] == (q * q - 1) * q);
    REQUIRE(cls["non-exact-cone"] == 0);
    REQUIRE(r.data["vertex_in_every_point"] == true);
    REQUIRE_FALSE(r.data.contains("notice"));
  }
  auto skew = cli::cmd_classify_lines(config("gf(3)", 3, 1));
  REQUIRE(skew.data.contains("notice"));
  REQUIRE(skew.data["classes"]["regular"] == 0);
  REQUIRE(skew.data["lines"] == 4);
}

TEST_CASE("regulus through two complementary points", "[cli]") {
  auto ok = cli::cmd_regulus_through(config("gf(3)", 4, 2), "[[1,0],[0,1]]", "[[0,1],[2,0]]");
  REQUIRE(ok.exit_code == cli::kSuccess);
  REQUIRE(ok.data["checks"]["W_plus_T_equals_W_plus_ZU"] == true);
  auto bad = cli::cmd_regulus_through(config("gf(3)", 4, 2), "[[1,0],[0,1]]", "[[1,0],[0,2]]");
  REQUIRE(bad.exit_code == cli::kViolated);
  const std::string with_i = R"([[["0","1","0","0"],0],[0,1]])";
  auto quat = cli::cmd_regulus_through(config("quat(Q)", 4, 2), with_i, "[[0,1],[-1,0]]");
  REQUIRE(quat.exit_code == cli::kSuccess);
  REQUIRE_THROWS_AS(cli::cmd_regulus_through(config("gf(3)", 4, 2), "[[1,0]", "[[0,1],[2,0]]"), cli::config_error);
  REQUIRE_THROWS_AS(cli::cmd_regulus_through(config("gf(3)", 3, 1), "[[1],[0]]", "[[0],[1]]"), cli::config_error);
}

TEST_CASE("reconstruct from a transversal file", "[cli]") {
  auto r = cli::cmd_reconstruct(config("gf(3)", 4, 2), config_path("data/transversals_gf3.json"));
  REQUIRE(r.exit_code == cli::kSuccess);
  REQUIRE(r.data["result"] == "PASS");

  auto doc = io::read_json_file(config_path("data/transversals_gf3.json"));
  doc["members"].erase(doc["members"].size() - 1);
  std::string path = scratch_path("transversals_short.json");
  io::write_json_file(path, doc);
  REQUIRE(cli::cmd_reconstruct(config("gf(3)", 4, 2), path).exit_code == cli::kViolated);
}

TEST_CASE("dual-spread commands", "[cli]") {
  auto cfg = config("gf(2)", 4, 2);
  auto pass = cli::cmd_check_dual_spread(cfg, config_path("data/regular_spread_gf2.json"));
  REQUIRE(pass.exit_code == cli::kSuccess);
  REQUIRE(pass.data["members"] == 5);
  REQUIRE(pass.text.rfind("PASS", 0) == 0);
  auto fail = cli::cmd_check_dual_spread(cfg, config_path("data/repeated_member_gf2.json"));
  REQUIRE(fail.exit_code == cli::kViolated);
  REQUIRE(fail.data["violation"]["kind"] == "DS1");

  for (std::size_t index : {1u, 2u}) {
    auto ex = cli::cmd_extract_family(cfg, config_path("data/regular_spread_gf2.json"), index);
    REQUIRE(ex.exit_code == cli::kSuccess);
    std::string fam_path = scratch_path("family_" + std::to_string(index) + ".json");
    io::write_json_file(fam_path, ex.data["output"]);
    auto built = cli::cmd_build_dual_spread(cfg, fam_path);
    REQUIRE(built.exit_code == cli::kSuccess);
    std::string spread_path = scratch_path("spread_" + std::to_string(index) + ".json");
    io::write_json_file(spread_path, built.data["output"]);
    REQUIRE(cli::cmd_check_dual_spread(cfg, spread_path).exit_code == cli::kSuccess);
    auto c = cli::build_chart(cfg);
    REQUIRE(detail::sorted_gammas(io::dual_spread_from_json(c, built.data["output"])) ==
            detail::sorted_gammas(io::dual_spread_from_json(c, io::read_json_file(config_path("data/regular_spread_gf2.json")))));
  }
  REQUIRE(cli::cmd_extract_family(cfg, config_path("data/repeated_member_gf2.json"), 1).exit_code == cli::kViolated);
  REQUIRE_THROWS_AS(cli::cmd_extract_family(cfg, config_path("data/regular_spread_gf2.json"), 0), cli::config_error);
  REQUIRE_THROWS_AS(cli::cmd_extract_family(cfg, config_path("data/regular_spread_gf2.json"), 3), cli::config_error);
  REQUIRE(cli::cmd_build_dual_spread(cfg, config_path("data/family_gf2.json")).exit_code == cli::kSuccess);
}
