#ifndef REGEN_CONFIG_HPP_
#define REGEN_CONFIG_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "regen/error.hpp"
#include "regen/levy_model.hpp"
#include "regen/norm_constants.hpp"

namespace regen {

using json = nlohmann::json;

inline std::string condition_label(const GrowthCondition& c) { return to_string(c); }

// Model block: {"family": ..., "params": {...}, "declared_condition": "A(1)"}.
inline json model_to_json(const LevyModel& m) {
  json j;
  j["family"] = to_string(m.family());
  json params = json::object();
  if (m.family() == Family::FiniteAtomic) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({a.x, a.w});
    params["atoms"] = atoms;
  } else {
    for (const auto& [k, v] : m.params()) params[k] = v;
    if (m.slow_part()) params["slow"] = model_to_json(*m.slow_part());
  }
  j["params"] = params;
  j["declared_condition"] = condition_label(m.condition());
  return j;
}

namespace detail {

inline double require_number(const json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number())
    throw ConfigError(std::string("model parameter '") + key + "' missing or not a number");
  return params[key].get<double>();
}

inline void reject_unknown(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace detail

inline LevyModel model_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("model block must be an object");
  detail::reject_unknown(j, {"family", "params", "declared_condition"}, "model block");
  if (!j.contains("family") || !j["family"].is_string()) throw ConfigError("model block needs a 'family' string");
  const std::string fam = j["family"];
  const json params = j.value("params", json::object());
  try {
    LevyModel m = [&]() -> LevyModel {
      if (fam == "atomic" || fam == "finite_atomic") {
        detail::reject_unknown(params, {"atoms"}, "atomic params");
        if (!params.contains("atoms") || !params["atoms"].is_array())
          throw ConfigError("atomic model needs params.atoms = [[x, w], ...]");
        std::vector<LevyModel::Atom> atoms;
        for (const auto& a : params["atoms"]) {
          if (!a.is_array() || a.size() != 2) throw ConfigError("each atom must be [x, w]");
          atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
        return LevyModel::finite_atomic(atoms);
      }
      if (fam == "exponential") {
        detail::reject_unknown(params, {"rate"}, "exponential params");
        return LevyModel::exponential(params.contains("rate") ? detail::require_number(params, "rate") : 1.0);
      }
      if (fam == "gamma") {
        detail::reject_unknown(params, {"rate"}, "gamma params");
        return LevyModel::gamma(params.contains("rate") ? detail::require_number(params, "rate") : 1.0);
      }
      if (fam == "log_power") {
        detail::reject_unknown(params, {"beta"}, "log_power params");
        return LevyModel::log_power(detail::require_number(params, "beta"));
      }
      if (fam == "dehaan_exp") {
        detail::reject_unknown(params, {"gamma", "delta"}, "dehaan_exp params");
        return LevyModel::dehaan_exp(detail::require_number(params, "gamma"), detail::require_number(params, "delta"));
      }
      if (fam == "heavy_composite") {
        detail::reject_unknown(params, {"slow", "alpha", "C"}, "heavy_composite params");
        if (!params.contains("slow")) throw ConfigError("heavy_composite needs params.slow");
        return LevyModel::heavy_composite(model_from_json(params["slow"]), detail::require_number(params, "alpha"),
                                          detail::require_number(params, "C"));
      }
      throw ConfigError("unknown model family '" + fam + "'");
    }();
    if (j.contains("declared_condition")) {
      const std::string declared = j["declared_condition"];
      if (declared != condition_label(m.condition()))
        throw ConfigError("declared_condition '" + declared + "' does not match the family's condition " +
                          condition_label(m.condition()));
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model block: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model block: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// Command-line model spec: inline JSON, a JSON file, or
// "family:key=value,key=value" (atoms as repeated x=..,w=.. pairs).
inline LevyModel parse_model_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') {
    try {
      return model_from_json(json::parse(spec));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("model spec: ") + e.what());
    }
  }
  if (std::ifstream(spec).good()) return model_from_json(read_json_file(spec));
  const auto colon = spec.find(':');
  json j;
  j["family"] = spec.substr(0, colon);
  json params = json::object();
  json atoms = json::array();
  std::optional<double> pending_x;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("model spec item '" + item + "' is not key=value");
      const std::string key = item.substr(0, eq);
      double val;
      try {
        val = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("model spec value in '" + item + "' is not a number");
      }
      if (key == "x") {
        pending_x = val;
      } else if (key == "w") {
        if (!pending_x) throw ConfigError("atom weight without location");
        atoms.push_back({*pending_x, val});
        pending_x.reset();
      } else {
        params[key] = val;
      }
    }
  }
  if (pending_x) atoms.push_back({*pending_x, 1.0});
  if (!atoms.empty()) params["atoms"] = atoms;
  j["params"] = params;
  return model_from_json(j);
}

// 64-bit FNV-1a
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << x;
  return os.str();
}

}  // namespace regen

#endif  // REGEN_CONFIG_HPP_
