// regen-comp: experiments, exact laws, limit-law CFs and self-checks for
// regenerative composition structures.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "regen/regen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

constexpr std::uint64_t kDefaultSuiteSeed = 20261015;

struct Globals {
  std::optional<std::uint64_t> seed;
  unsigned threads = regen::default_threads();
  std::string out_dir = ".";
};

int cmd_experiment(const Globals& g, const std::string& config_path) {
  auto cfg = regen::load_config(config_path);
  if (g.seed) cfg.master_seed = *g.seed;
  const auto res = regen::run_experiment(cfg, g.threads);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  if (cfg.output.csv.empty()) regen::write_csv(std::cout, res);
  for (const auto& f : regen::emit(res, cfg.output, g.out_dir)) std::cerr << "wrote " << f << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const auto cfg = regen::load_config(config_path);
  std::cout << cfg.canonical().dump(2) << "\nconfig_hash=" << cfg.hash() << "\n";
  return kExitOk;
}

int cmd_exact(const Globals& g, const std::string& model_spec, int n, const std::string& out) {
  const auto model = regen::parse_model_spec(model_spec);
  if (n < 1 || n > regen::kExactMaxN) throw regen::ConfigError("--n must lie in [1, 14]");
  const auto law = regen::exact_joint_law(model, n);
  if (out.empty()) {
    law.write_csv(std::cout);
  } else {
    const auto path = std::filesystem::path(g.out_dir) / out;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    law.write_csv(f);
    std::cerr << "wrote " << path.string() << "\n";
  }
  std::cerr << "E K = " << regen::fmt_double(law.mean_K()) << ", E K1 = " << regen::fmt_double(law.mean_K1())
            << ", total mass = " << regen::fmt_double(law.total()) << "\n";
  return kExitOk;
}

int cmd_cf(double alpha, double beta, const std::string& kind, double umax, int steps) {
  if (steps < 1) throw regen::ConfigError("--steps must be positive");
  regen::LimitLaw law;
  try {
    law = regen::LimitLaw::make(regen::parse_law_kind(kind), alpha, beta);
  } catch (const std::invalid_argument& e) {
    throw regen::ConfigError(e.what());
  }
  std::cout << "u,closed_re,closed_im,integral_re,integral_im,abs_diff\n";
  for (int k = -steps; k <= steps; ++k) {
    const double u = umax * k / steps;
    const auto c = regen::closed_form_log_cf(law, u);
    const auto q = regen::integral_log_cf(law, u);
    std::cout << regen::fmt_double(u) << ',' << regen::fmt_double(c.real()) << ',' << regen::fmt_double(c.imag())
              << ',' << regen::fmt_double(q.real()) << ',' << regen::fmt_double(q.imag()) << ','
              << regen::fmt_double(std::abs(c - q)) << '\n';
  }
  return kExitOk;
}

int cmd_check(const Globals& g, const std::string& which) {
  const std::uint64_t seed = g.seed.value_or(kDefaultSuiteSeed);
  std::vector<regen::CheckResult> rs;
  if (which == "invariants") {
    rs = regen::run_invariants(seed, g.threads);
    regen::print_report(std::cout, rs);
  } else if (which == "acceptance") {
    rs = regen::run_acceptance(seed, g.threads, [](const regen::CheckResult& r) {
      regen::print_report(std::cout, {r});
      std::cout.flush();
    });
  } else {
    throw regen::ConfigError("check expects 'invariants' or 'acceptance'");
  }
  return regen::all_passed(rs) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and exact laws for regenerative composition structures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(regen::kVersion));
  Globals g;
  app.add_option("--seed", g.seed, "master seed (overrides the config value)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "directory for relative output paths");

  std::string config_path;
  auto* exp = app.add_subcommand("experiment", "run an experiment config");
  exp->add_option("--config", config_path, "JSON experiment config")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse a config and print its canonical form and hash");
  validate->add_option("--config", validate_path, "JSON experiment config")->required();

  std::string model_spec, exact_out;
  int exact_n = 0;
  auto* exact = app.add_subcommand("exact", "exact joint law of (K_n, K_{n,1})");
  exact->add_option("--model", model_spec, "family:key=value,... or JSON")->required();
  exact->add_option("--n", exact_n, "n in [1, 14]")->required();
  exact->add_option("--out", exact_out, "CSV file under --out-dir (default stdout)");

  double alpha = 2.0, beta = 0.0, umax = 3.0;
  int steps = 60;
  std::string kind = "J_beta";
  auto* cf = app.add_subcommand("cf", "integral vs closed-form log-CF of a limit law");
  cf->add_option("--alpha", alpha, "index in (1, 2]");
  cf->add_option("--beta", beta, "beta for J_beta and J1_beta");
  cf->add_option("--kind", kind, "J_beta, K_exp, Z1 or J1_beta");
  cf->add_option("--umax", umax, "grid is [-umax, umax]");
  cf->add_option("--steps", steps, "grid points on each side of zero");

  std::string which;
  auto* check = app.add_subcommand("check", "run the invariant or acceptance suite");
  check->add_option("suite", which, "invariants | acceptance")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto branches = regen::check_branch_table();
    if (!branches.passed) {
      std::cerr << "branch selection table mismatch: " << branches.detail << "\n";
      return kExitFailure;
    }
    if (*exp) return cmd_experiment(g, config_path);
    if (*validate) return cmd_validate(validate_path);
    if (*exact) return cmd_exact(g, model_spec, exact_n, exact_out);
    if (*cf) return cmd_cf(alpha, beta, kind, umax, steps);
    if (*check) return cmd_check(g, which);
  } catch (const regen::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const regen::UnsupportedRegime& e) {
    std::cerr << "unsupported regime: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
