#include <affcomp/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace affcomp;

int main(int argc, char** argv) {
  CLI::App app{"Affine spaces on the complements of a subspace W"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, field, output;
  std::optional<std::size_t> n, k;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
  app.add_option("--config", config_path, "JSON config: field, n, k, W, U, seed")->check(CLI::ExistingFile);
  app.add_option("--field", field, "field spec: gf(p), gf(p^k; modulus=[c_0,...,c_k]) or quat(Q)");
  app.add_option("--n", n, "dimension of V");
  app.add_option("--k", k, "dimension of W");
  app.add_option("--seed", seed, "seed for quaternion samples");
  app.add_flag("--json", as_json, "print the JSON report");
  app.add_option("-o,--output", output, "write the generated file (build-dual-spread, extract-family)");

  auto* enumerate = app.add_subcommand("enumerate", "list every complement of W by its gamma matrix");
  auto* classify = app.add_subcommand("classify-lines", "classify the lines through U");
  auto* regulus = app.add_subcommand("regulus", "regulus through W and two complementary points");
  std::vector<std::string> through;
  regulus->add_option("--through", through, "two points: gamma matrices or subspaces, inline JSON or files")
      ->expected(2)
      ->allow_extra_args(false)
      ->required();
  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a regulus from its transversals");
  std::string transversal_file;
  reconstruct->add_option("--transversals", transversal_file, "transversal set file")->required()->check(CLI::ExistingFile);
  auto* check = app.add_subcommand("check-dual-spread", "check (DS1) and (DS2)");
  std::string spread_file;
  check->add_option("file", spread_file, "dual-spread file")->required()->check(CLI::ExistingFile);
  auto* build = app.add_subcommand("build-dual-spread", "dual spread from a *-transversal family");
  std::string family_file;
  build->add_option("family", family_file, "family file")->required()->check(CLI::ExistingFile);
  auto* extract = app.add_subcommand("extract-family", "*-transversal family of a dual spread");
  std::size_t index = 1;
  extract->add_option("file", spread_file, "dual-spread file")->required()->check(CLI::ExistingFile);
  extract->add_option("--index", index, "coordinate i0, 1-based")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  try {
    cli::RunConfig cfg = config_path.empty() ? cli::RunConfig{} : cli::load_config(config_path);
    if (!field.empty()) cfg.field = field;
    if (n) cfg.n = *n;
    if (k) cfg.k = *k;
    if (seed) cfg.seed = *seed;
    if ((n || k) && !config_path.empty() && (cfg.w_rows || cfg.u_rows))
      throw cli::config_error("--n/--k cannot override a config with explicit bases");

    cli::Report report;
    if (enumerate->parsed()) report = cli::cmd_enumerate(cfg);
    else if (classify->parsed()) report = cli::cmd_classify_lines(cfg);
    else if (regulus->parsed()) report = cli::cmd_regulus_through(cfg, through[0], through[1]);
    else if (reconstruct->parsed()) report = cli::cmd_reconstruct(cfg, transversal_file);
    else if (check->parsed()) report = cli::cmd_check_dual_spread(cfg, spread_file);
    else if (build->parsed()) report = cli::cmd_build_dual_spread(cfg, family_file);
    else report = cli::cmd_extract_family(cfg, spread_file, index);

    if (!output.empty()) {
      if (!report.data.contains("output")) throw cli::config_error("this command produces no output file");
      io::write_json_file(output, report.data["output"]);
    }
    if (as_json) std::cout << report.data.dump(2) << "\n";
    else std::cout << report.text;
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }
}
