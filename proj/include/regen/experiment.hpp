#ifndef REGEN_EXPERIMENT_HPP_
#define REGEN_EXPERIMENT_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "regen/compensator.hpp"
#include "regen/config.hpp"
#include "regen/levy_model.hpp"
#include "regen/limit_laws.hpp"
#include "regen/norm_constants.hpp"
#include "regen/occupancy.hpp"
#include "regen/parallel.hpp"
#include "regen/pathsim.hpp"

namespace regen {

inline constexpr const char* kVersion = "0.1.0";

enum class Statistic { Kn, Kn1, Kt, A, A1, B, FPT };
enum class SamplerKind { Path, Decrement };

inline const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::Kn: return "Kn";
    case Statistic::Kn1: return "Kn1";
    case Statistic::Kt: return "Kt";
    case Statistic::A: return "A";
    case Statistic::A1: return "A1";
    case Statistic::B: return "B";
    case Statistic::FPT: return "FPT";
  }
  return "?";
}

inline Statistic parse_statistic(const std::string& s) {
  for (auto st : {Statistic::Kn, Statistic::Kn1, Statistic::Kt, Statistic::A, Statistic::A1, Statistic::B, Statistic::FPT})
    if (s == to_string(st)) return st;
  throw ConfigError("unknown statistic '" + s + "' (expected Kn, Kn1, Kt, A, A1, B or FPT)");
}

inline const char* to_string(SamplerKind s) { return s == SamplerKind::Path ? "path" : "decrement"; }

inline Centering parse_centering(const std::string& s) {
  for (auto c : {Centering::PhiIntegral, Centering::PhiHatIntegral, Centering::TailIntegral})
    if (s == to_string(c)) return c;
  throw ConfigError("unknown centering '" + s + "'");
}

struct OutputPaths {
  std::string csv;
  std::string json;
  std::string raw;           // replicate_id, grid_value, raw, normalized
  std::string compensators;  // replicate_id, t, K, K1, A, A1, B
  std::string compositions;  // replicate_id, grid_value, parts, K, K1
};

struct ExperimentConfig {
  std::string name = "experiment";
  json model_block;
  std::shared_ptr<const LevyModel> model;
  Statistic statistic = Statistic::Kn;
  std::vector<double> grid;
  int replicates = 1000;
  std::uint64_t master_seed = 1;
  SamplerKind sampler = SamplerKind::Path;
  std::optional<double> eps;
  Centering centering = Centering::PhiIntegral;
  bool exploratory = false;
  OutputPaths output;

  // Fields that determine the numbers; hashed for provenance.
  json canonical() const {
    json j;
    j["name"] = name;
    j["model"] = model_to_json(*model);
    j["statistic"] = to_string(statistic);
    j["grid"] = grid;
    j["replicates"] = replicates;
    j["master_seed"] = master_seed;
    j["sampler"] = to_string(sampler);
    j["eps"] = eps ? json(*eps) : json(nullptr);
    j["centering"] = to_string(centering);
    j["exploratory"] = exploratory;
    return j;
  }
  std::string hash() const { return hex64(fnv1a(canonical().dump())); }
};

inline bool is_integer_statistic(Statistic s) { return s == Statistic::Kn || s == Statistic::Kn1; }

inline ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  detail::reject_unknown(j,
                         {"name", "model", "statistic", "grid", "replicates", "master_seed", "sampler", "eps",
                          "centering", "exploratory", "output", "comment"},
                         "experiment config");
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    if (!j.contains("model")) throw ConfigError("experiment config needs a model block");
    // Compact "family:key=value" strings are stored in their JSON form.
    auto model = j["model"].is_string() ? parse_model_spec(j["model"].get<std::string>()) : model_from_json(j["model"]);
    c.model_block = j["model"].is_string() ? model_to_json(model) : j["model"];
    c.model = std::make_shared<const LevyModel>(std::move(model));
    c.statistic = parse_statistic(j.value("statistic", std::string("Kn")));
    if (j.contains("grid")) {
      c.grid = j["grid"].get<std::vector<double>>();
    } else {
      const bool slow = c.model->condition().kind == GrowthCondition::Kind::B ||
                        moment_regime(*c.model) != MomentRegime::FiniteVariance;
      c.grid = slow ? std::vector<double>{1e3, 1e4, 1e5} : std::vector<double>{1e3, std::pow(10.0, 4.5), 1e6};
    }
    c.replicates = j.value("replicates", c.replicates);
    c.master_seed = j.value("master_seed", c.master_seed);
    const std::string sampler = j.value("sampler", std::string("path"));
    if (sampler == "path") c.sampler = SamplerKind::Path;
    else if (sampler == "decrement") c.sampler = SamplerKind::Decrement;
    else throw ConfigError("sampler must be 'path' or 'decrement'");
    if (j.contains("eps") && !j["eps"].is_null()) c.eps = j["eps"].get<double>();
    c.centering = parse_centering(j.value("centering", std::string(to_string(c.centering))));
    c.exploratory = j.value("exploratory", false);
    if (j.contains("output")) {
      const auto& o = j["output"];
      detail::reject_unknown(o, {"csv", "json", "raw", "compensators", "compositions"}, "output block");
      c.output.csv = o.value("csv", std::string());
      c.output.json = o.value("json", std::string());
      c.output.raw = o.value("raw", std::string());
      c.output.compensators = o.value("compensators", std::string());
      c.output.compositions = o.value("compositions", std::string());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }

  if (c.grid.empty()) throw ConfigError("grid must be nonempty");
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    if (!(c.grid[i] > 0)) throw ConfigError("grid values must be positive");
    if (i > 0 && !(c.grid[i] > c.grid[i - 1])) throw ConfigError("grid must be strictly increasing");
  }
  if (c.replicates < 100) throw ConfigError("replicates must be at least 100 for distance summaries");
  if (c.statistic != Statistic::FPT && c.grid.front() < 2) throw ConfigError("grid values must be >= 2");
  if (c.sampler == SamplerKind::Decrement) {
    if (!is_integer_statistic(c.statistic)) throw ConfigError("decrement sampler only produces Kn and Kn1");
    if (c.grid.back() > static_cast<double>(DecrementMatrix::kMaxN))
      throw ConfigError("decrement sampler is capped at n = 10^4; use the path sampler");
  }
  if (c.statistic == Statistic::B && !c.model->finite()) throw ConfigError("statistic B needs a finite Lévy measure");
  if (c.eps && !(*c.eps > 0)) throw ConfigError("eps must be positive");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

struct CompensatorRow {
  std::size_t replicate = 0;
  double t = 0.0;
  long long pi = 0;
  long long K = 0;
  long long K1 = 0;
  double A = 0.0;
  double A1 = 0.0;
  double B = std::numeric_limits<double>::quiet_NaN();
};

struct GridResult {
  double grid_value = 0.0;
  double mean_raw = 0.0, var_raw = 0.0;
  double b = 0.0, a = 1.0;
  double mean_norm = 0.0, var_norm = 0.0;
  double ks_stat = 0.0, ks_p = 1.0, cf_dist = 0.0;
  double law_alpha = 2.0, law_scale = 1.0;
  std::string law_kind;
  std::string branch;
  double eps = 0.0;
  std::vector<double> raw, normalized;
  std::vector<CompensatorRow> compensators;
  std::vector<Composition> compositions;
};

struct ExperimentResult {
  std::string name;
  std::string statistic;
  std::string model;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::string version = kVersion;
  bool exploratory = false;
  std::vector<GridResult> rows;
  std::vector<std::string> warnings;
};

// Draws of the Poissonized counts and compensators on one path.
inline CompensatorRow sample_compensators(const LevyModel& model, const PhiTable& table, double t, double eps,
                                          Rng& rng) {
  CompensatorRow row;
  row.t = t;
  auto path = simulate_path(model, HorizonRule::until_level(compensator_level(table, t)), eps, rng);
  row.pi = draw_poisson(t, rng);
  const auto occ = occupy_path(path, model, row.pi, rng, rng);
  for (const auto& [k, c] : occ) {
    ++row.K;
    if (c == 1) ++row.K1;
  }
  row.A = compensator_A(path, table, t);
  row.A1 = compensator_A1(path, table, t);
  if (model.finite()) row.B = compensator_B(walk_of(path), table, t);
  return row;
}

// Truncation for Poissonized runs at intensity t: the horizon is the
// compensator level divided by m.
inline double compensator_eps(const LevyModel& model, const PhiTable& table, double t) {
  if (model.finite()) return 0.0;
  const double tau = compensator_level(table, t) / model.mean() + 1.0;
  return choose_eps(model, t, tau);
}

namespace detail {

inline void mean_var(const std::vector<double>& x, double& mean, double& var) {
  mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var = x.size() > 1 ? var / static_cast<double>(x.size() - 1) : 0.0;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 1) {
  const LevyModel& model = *cfg.model;
  ExperimentResult res;
  res.name = cfg.name;
  res.statistic = to_string(cfg.statistic);
  res.model = model.describe();
  res.config_hash = cfg.hash();
  res.master_seed = cfg.master_seed;
  res.exploratory = cfg.exploratory;

  const bool slow = model.condition().kind == GrowthCondition::Kind::B || moment_regime(model) != MomentRegime::FiniteVariance;
  if (slow && cfg.grid.back() > 1e5)
    res.warnings.push_back("grid exceeds 10^5 for a slowly converging regime: convergence is logarithmic in n");
  if (slow)
    res.warnings.push_back("slow-variation regime: expect logarithmic convergence; compare trends, not limits");

  const bool needs_table = cfg.statistic == Statistic::Kt || cfg.statistic == Statistic::A ||
                           cfg.statistic == Statistic::A1 || cfg.statistic == Statistic::B;
  std::unique_ptr<PhiTable> table;
  if (needs_table) table = std::make_unique<PhiTable>(model);
  std::unique_ptr<DecrementMatrix> decrement;
  if (cfg.sampler == SamplerKind::Decrement) decrement = std::make_unique<DecrementMatrix>(model);

  for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
    GridResult g;
    const double x = is_integer_statistic(cfg.statistic) ? std::round(cfg.grid[gi]) : cfg.grid[gi];
    g.grid_value = x;

    LimitLaw law;
    if (cfg.statistic == Statistic::FPT) {
      g.b = x / model.mean();
      g.a = fluctuation_scale(model, x);
      law = LimitLaw::make(LawKind::Z1, regime_alpha(model));
      g.branch = std::string("FPT/") + to_string(moment_regime(model));
    } else {
      const Target target =
          (cfg.statistic == Statistic::Kn1 || cfg.statistic == Statistic::A1) ? Target::Kn1 : Target::Kn;
      const auto nc = norm_constants(model, x, target, cfg.centering, cfg.exploratory);
      g.b = nc.b;
      g.a = nc.a;
      law = nc.law;
      g.branch = nc.branch;
      if (nc.exploratory) res.warnings.push_back("exploratory branch " + nc.branch + " is not a proven limit theorem");
    }
    g.law_alpha = law.alpha;
    g.law_scale = law.scale;
    g.law_kind = to_string(law.kind);

    const auto n_rep = static_cast<std::size_t>(cfg.replicates);
    g.raw.assign(n_rep, 0.0);
    if (needs_table) g.compensators.assign(n_rep, CompensatorRow{});
    const bool keep_compositions = !cfg.output.compositions.empty() && is_integer_statistic(cfg.statistic);
    if (keep_compositions) g.compositions.assign(n_rep, Composition{});

    std::optional<TruncationSchedule> sched;
    if (is_integer_statistic(cfg.statistic) && cfg.sampler == SamplerKind::Path) {
      sched = cfg.eps ? TruncationSchedule::fixed(*cfg.eps) : TruncationSchedule(model, static_cast<long long>(x));
      g.eps = sched->smallest_eps();
    }
    if (needs_table) g.eps = cfg.eps ? *cfg.eps : compensator_eps(model, *table, x);

    const std::uint64_t grid_seed = derive_seed(cfg.master_seed, gi);
    parallel_for(n_rep, threads, [&](std::size_t r) {
      Rng rng = make_rng(grid_seed, r);
      switch (cfg.statistic) {
        case Statistic::Kn:
        case Statistic::Kn1: {
          const auto n = static_cast<long long>(x);
          Composition c = cfg.sampler == SamplerKind::Path ? sample_composition_sweep(model, n, *sched, rng)
                                                           : sample_composition_decrement(*decrement, n, rng);
          const auto bc = block_counts(c);
          g.raw[r] = static_cast<double>(cfg.statistic == Statistic::Kn ? bc.K : bc.K1);
          if (keep_compositions) g.compositions[r] = std::move(c);
          break;
        }
        case Statistic::Kt:
        case Statistic::A:
        case Statistic::A1:
        case Statistic::B: {
          auto row = sample_compensators(model, *table, x, g.eps, rng);
          row.replicate = r;
          g.raw[r] = cfg.statistic == Statistic::Kt  ? static_cast<double>(row.K)
                     : cfg.statistic == Statistic::A ? row.A
                     : cfg.statistic == Statistic::A1 ? row.A1
                                                      : row.B;
          g.compensators[r] = row;
          break;
        }
        case Statistic::FPT: g.raw[r] = sample_first_passage(model, x, rng); break;
      }
    });

    g.normalized.resize(n_rep);
    for (std::size_t r = 0; r < n_rep; ++r) g.normalized[r] = (g.raw[r] - g.b) / g.a;
    detail::mean_var(g.raw, g.mean_raw, g.var_raw);
    detail::mean_var(g.normalized, g.mean_norm, g.var_norm);
    const auto ks = ks_distance(g.normalized, law);
    g.ks_stat = ks.statistic;
    g.ks_p = ks.p_value;
    g.cf_dist = cf_distance(g.normalized, law);
    res.rows.push_back(std::move(g));
  }
  return res;
}

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_provenance(std::ostream& os, const ExperimentResult& r) {
  os << "# name=" << r.name << "\n# statistic=" << r.statistic << "\n# model=" << r.model
     << "\n# config_hash=" << r.config_hash << "\n# master_seed=" << r.master_seed << "\n# version=" << r.version
     << "\n";
  if (r.exploratory) os << "# exploratory=true\n";
}

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"grid_value", "mean_raw", "var_raw", "b",        "a",         "mean_norm",
                                             "var_norm",   "ks_stat",  "ks_p",    "cf_dist",  "law_alpha", "law_scale"};
  return cols;
}

inline void write_csv(std::ostream& os, const ExperimentResult& r) {
  write_provenance(os, r);
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& g : r.rows) {
    const double v[] = {g.grid_value, g.mean_raw, g.var_raw, g.b,       g.a,         g.mean_norm,
                        g.var_norm,   g.ks_stat,  g.ks_p,    g.cf_dist, g.law_alpha, g.law_scale};
    for (std::size_t i = 0; i < 12; ++i) os << (i ? "," : "") << fmt_double(v[i]);
    os << "\n";
  }
}

inline json result_to_json(const ExperimentResult& r) {
  json j;
  j["provenance"] = {{"name", r.name},           {"statistic", r.statistic},     {"model", r.model},
                     {"config_hash", r.config_hash}, {"master_seed", r.master_seed}, {"version", r.version},
                     {"exploratory", r.exploratory}};
  j["warnings"] = r.warnings;
  json rows = json::array();
  for (const auto& g : r.rows) {
    rows.push_back({{"grid_value", g.grid_value}, {"mean_raw", g.mean_raw}, {"var_raw", g.var_raw},
                    {"b", g.b},                   {"a", g.a},               {"mean_norm", g.mean_norm},
                    {"var_norm", g.var_norm},     {"ks_stat", g.ks_stat},   {"ks_p", g.ks_p},
                    {"cf_dist", g.cf_dist},       {"law_alpha", g.law_alpha}, {"law_scale", g.law_scale},
                    {"law_kind", g.law_kind},     {"branch", g.branch},     {"eps", g.eps}});
  }
  j["rows"] = rows;
  return j;
}

inline void write_raw(std::ostream& os, const ExperimentResult& r) {
  write_provenance(os, r);
  os << "replicate_id,grid_value,raw,normalized\n";
  for (const auto& g : r.rows)
    for (std::size_t i = 0; i < g.raw.size(); ++i)
      os << i << ',' << fmt_double(g.grid_value) << ',' << fmt_double(g.raw[i]) << ',' << fmt_double(g.normalized[i])
         << '\n';
}

inline void write_compensators(std::ostream& os, const ExperimentResult& r) {
  write_provenance(os, r);
  os << "replicate_id,t,K,K1,A,A1,B\n";
  for (const auto& g : r.rows)
    for (const auto& c : g.compensators)
      os << c.replicate << ',' << fmt_double(c.t) << ',' << c.K << ',' << c.K1 << ',' << fmt_double(c.A) << ','
         << fmt_double(c.A1) << ',' << (std::isnan(c.B) ? std::string() : fmt_double(c.B)) << '\n';
}

inline void write_compositions(std::ostream& os, const ExperimentResult& r) {
  write_provenance(os, r);
  os << "replicate_id,grid_value,parts,K,K1\n";
  for (const auto& g : r.rows)
    for (std::size_t i = 0; i < g.compositions.size(); ++i) {
      const auto& c = g.compositions[i];
      os << i << ',' << fmt_double(g.grid_value) << ',';
      write_parts(os, c);
      const auto bc = block_counts(c);
      os << ',' << bc.K << ',' << bc.K1 << '\n';
    }
}

namespace detail {

template <class Writer>
void write_file(const std::filesystem::path& p, const Writer& w) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  w(out);
  if (!out) throw Error("write failed for " + p.string());
}

}  // namespace detail

// Writes every configured output under out_dir (relative paths). Returns the files written.
inline std::vector<std::string> emit(const ExperimentResult& r, const OutputPaths& paths,
                                     const std::filesystem::path& out_dir) {
  std::vector<std::string> written;
  auto target = [&](const std::string& p) { return std::filesystem::path(p).is_absolute() ? std::filesystem::path(p) : out_dir / p; };
  if (!paths.csv.empty()) {
    detail::write_file(target(paths.csv), [&](std::ostream& os) { write_csv(os, r); });
    written.push_back(target(paths.csv).string());
  }
  if (!paths.json.empty()) {
    detail::write_file(target(paths.json), [&](std::ostream& os) { os << result_to_json(r).dump(2) << "\n"; });
    written.push_back(target(paths.json).string());
  }
  if (!paths.raw.empty()) {
    detail::write_file(target(paths.raw), [&](std::ostream& os) { write_raw(os, r); });
    written.push_back(target(paths.raw).string());
  }
  if (!paths.compensators.empty() && !r.rows.empty() && !r.rows.front().compensators.empty()) {
    detail::write_file(target(paths.compensators), [&](std::ostream& os) { write_compensators(os, r); });
    written.push_back(target(paths.compensators).string());
  }
  if (!paths.compositions.empty() && !r.rows.empty() && !r.rows.front().compositions.empty()) {
    detail::write_file(target(paths.compositions), [&](std::ostream& os) { write_compositions(os, r); });
    written.push_back(target(paths.compositions).string());
  }
  return written;
}

}  // namespace regen

#endif  // REGEN_EXPERIMENT_HPP_
