#pragma once

// Strict JSON run configuration. Every block rejects unknown keys (typos
// must fail loudly, not silently fall back to defaults), defaults are
// filled during parsing, and the normalized result can be echoed back as
// JSON so output files carry the exact parameters that produced them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohpol/coherence.hpp"
#include "cohpol/jcm.hpp"
#include "cohpol/numerics.hpp"
#include "cohpol/reservoir.hpp"

namespace cohpol {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode {
  kRate,
  kNullField,
  kEvolveCoherence,
  kSusyCheck,
  kEvolvePolarization,
  kSweep,
};

inline const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::kRate: return "rate";
    case RunMode::kNullField: return "null-field";
    case RunMode::kEvolveCoherence: return "evolve-coherence";
    case RunMode::kSusyCheck: return "susy-check";
    case RunMode::kEvolvePolarization: return "evolve-polarization";
    case RunMode::kSweep: return "sweep";
  }
  return "unknown";
}

inline RunMode parse_mode(const std::string& s) {
  if (s == "rate") return RunMode::kRate;
  if (s == "null-field") return RunMode::kNullField;
  if (s == "evolve-coherence") return RunMode::kEvolveCoherence;
  if (s == "susy-check") return RunMode::kSusyCheck;
  if (s == "evolve-polarization") return RunMode::kEvolvePolarization;
  if (s == "sweep") return RunMode::kSweep;
  throw ConfigError("unknown mode \"" + s +
                    "\" (expected rate, null-field, evolve-coherence, "
                    "susy-check, evolve-polarization or sweep)");
}

struct NumericOptions {
  double step = 1e-4;           // default integration/sampling step
  double sin_threshold = 1e-6;  // singularity classification threshold
  int fock_dim = 32;            // truncation dimension for algebra checks
};

struct CoherenceOptions {
  Complex rho01{1.0, 0.0};
  Complex rho10{1.0, 0.0};       // defaults to conj(rho01)
  std::string envelope = "null-field";  // or "zero"
};

struct PolarizationOptions {
  Complex rho01{0.5, 0.0};
  Complex rho10{0.5, 0.0};  // defaults to conj(rho01)
  CoefficientMode c1_mode = CoefficientMode::kFullC1;
};

struct SweepOptions {
  std::string parameter;  // "m", "k" or "delta"
  std::vector<double> values;
};

struct RunConfig {
  RunMode mode = RunMode::kRate;
  std::optional<ReservoirSpec> reservoir;
  std::optional<DrivenAtomParams> atom;
  std::optional<JcmParams> jcm;
  std::optional<TimeGrid> grid;
  NumericOptions numeric;
  CoherenceOptions coherence;
  PolarizationOptions polarization;
  SweepOptions sweep;

  // Normalized echo of the parsed config (defaults filled), emitted into
  // output metadata so results are traceable to their exact parameters.
  Json echo;
};

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::string& block,
                                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return it.key() == k;
        }) == allowed.end()) {
      throw ConfigError("unknown key \"" + it.key() + "\" in " + block);
    }
  }
}

inline double get_number(const Json& obj, const std::string& where) {
  if (!obj.is_number())
    throw ConfigError(where + " must be a number");
  return obj.get<double>();
}

inline int get_integer(const Json& obj, const std::string& where) {
  if (!obj.is_number_integer())
    throw ConfigError(where + " must be an integer");
  return obj.get<int>();
}

inline Complex get_complex(const Json& obj, const std::string& where) {
  if (obj.is_number()) return {obj.get<double>(), 0.0};
  if (obj.is_array() && obj.size() == 2 && obj[0].is_number() &&
      obj[1].is_number())
    return {obj[0].get<double>(), obj[1].get<double>()};
  throw ConfigError(where + " must be a number or a [re, im] pair");
}

inline ReservoirSpec parse_reservoir(const Json& j) {
  reject_unknown_keys(j, "reservoir", {"modes", "temperature"});
  ReservoirSpec spec;
  if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].empty())
    throw ConfigError("reservoir.modes must be a non-empty array");
  for (std::size_t i = 0; i < j["modes"].size(); ++i) {
    const Json& jm = j["modes"][i];
    const std::string where = "reservoir.modes[" + std::to_string(i) + "]";
    if (!jm.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown_keys(jm, where, {"omega", "g"});
    ReservoirMode mode;
    if (!jm.contains("omega"))
      throw ConfigError(where + " is missing \"omega\"");
    mode.omega = get_number(jm["omega"], where + ".omega");
    if (!jm.contains("g")) throw ConfigError(where + " is missing \"g\"");
    mode.g = get_number(jm["g"], where + ".g");
    spec.modes.push_back(mode);
  }
  if (j.contains("temperature"))
    spec.temperature = get_number(j["temperature"], "reservoir.temperature");
  spec.validate();
  return spec;
}

inline DrivenAtomParams parse_atom(const Json& j) {
  reject_unknown_keys(j, "atom", {"omega0", "d"});
  DrivenAtomParams atom;
  if (!j.contains("omega0")) throw ConfigError("atom is missing \"omega0\"");
  atom.omega0 = get_number(j["omega0"], "atom.omega0");
  if (!j.contains("d")) throw ConfigError("atom is missing \"d\"");
  atom.d = get_number(j["d"], "atom.d");
  atom.validate();
  return atom;
}

inline JcmParams parse_jcm(const Json& j) {
  reject_unknown_keys(j, "jcm", {"g", "k", "m", "omega0", "omega", "delta"});
  JcmParams p;
  if (j.contains("g")) p.g = get_complex(j["g"], "jcm.g");
  if (j.contains("k")) p.k = get_integer(j["k"], "jcm.k");
  if (j.contains("m")) p.m = get_integer(j["m"], "jcm.m");
  if (j.contains("omega")) p.omega = get_number(j["omega"], "jcm.omega");
  if (j.contains("omega0")) {
    p.omega0 = get_number(j["omega0"], "jcm.omega0");
    p.delta = double(p.k) * p.omega - p.omega0;
  } else if (j.contains("delta")) {
    // omega0 derived so the detuning identity holds exactly.
    p.delta = get_number(j["delta"], "jcm.delta");
    p.omega0 = double(p.k) * p.omega - p.delta;
  } else {
    p.omega0 = double(p.k) * p.omega;  // resonance
    p.delta = 0.0;
  }
  if (j.contains("omega0") && j.contains("delta")) {
    const double given = get_number(j["delta"], "jcm.delta");
    if (given != p.delta)
      throw ConfigError("jcm.delta must equal k*omega - omega0");
  }
  p.validate();
  return p;
}

inline TimeGrid parse_grid(const Json& j, double default_step) {
  reject_unknown_keys(j, "grid", {"start", "stop", "step"});
  TimeGrid grid;
  grid.step = default_step;
  if (j.contains("start")) grid.start = get_number(j["start"], "grid.start");
  if (!j.contains("stop")) throw ConfigError("grid is missing \"stop\"");
  grid.stop = get_number(j["stop"], "grid.stop");
  if (j.contains("step")) grid.step = get_number(j["step"], "grid.step");
  grid.validate();  // "grid.step must be > 0", "grid.stop must be > ..."
  return grid;
}

inline NumericOptions parse_numeric(const Json& j) {
  reject_unknown_keys(j, "numeric", {"step", "sin_threshold", "fock_dim"});
  NumericOptions n;
  if (j.contains("step")) n.step = get_number(j["step"], "numeric.step");
  if (!(n.step > 0.0)) throw ConfigError("numeric.step must be > 0");
  if (j.contains("sin_threshold"))
    n.sin_threshold = get_number(j["sin_threshold"], "numeric.sin_threshold");
  if (!(n.sin_threshold > 0.0))
    throw ConfigError("numeric.sin_threshold must be > 0");
  if (j.contains("fock_dim"))
    n.fock_dim = get_integer(j["fock_dim"], "numeric.fock_dim");
  if (n.fock_dim < 2) throw ConfigError("numeric.fock_dim must be >= 2");
  return n;
}

inline CoherenceOptions parse_coherence(const Json& j) {
  reject_unknown_keys(j, "coherence", {"rho01", "rho10", "envelope"});
  CoherenceOptions c;
  if (j.contains("rho01")) c.rho01 = get_complex(j["rho01"], "coherence.rho01");
  c.rho10 = std::conj(c.rho01);
  if (j.contains("rho10")) c.rho10 = get_complex(j["rho10"], "coherence.rho10");
  if (j.contains("envelope")) {
    if (!j["envelope"].is_string())
      throw ConfigError("coherence.envelope must be a string");
    c.envelope = j["envelope"].get<std::string>();
  }
  if (c.envelope != "null-field" && c.envelope != "zero")
    throw ConfigError(
        "coherence.envelope must be \"null-field\" or \"zero\"");
  return c;
}

inline PolarizationOptions parse_polarization(const Json& j) {
  reject_unknown_keys(j, "polarization", {"rho01", "rho10", "c1_mode"});
  PolarizationOptions p;
  if (j.contains("rho01"))
    p.rho01 = get_complex(j["rho01"], "polarization.rho01");
  p.rho10 = std::conj(p.rho01);
  if (j.contains("rho10"))
    p.rho10 = get_complex(j["rho10"], "polarization.rho10");
  if (j.contains("c1_mode")) {
    if (!j["c1_mode"].is_string())
      throw ConfigError("polarization.c1_mode must be a string");
    const std::string mode = j["c1_mode"].get<std::string>();
    if (mode == "full")
      p.c1_mode = CoefficientMode::kFullC1;
    else if (mode == "re-only")
      p.c1_mode = CoefficientMode::kRealC1Only;
    else
      throw ConfigError(
          "polarization.c1_mode must be \"full\" or \"re-only\"");
  }
  return p;
}

inline SweepOptions parse_sweep(const Json& j) {
  reject_unknown_keys(j, "sweep", {"parameter", "values"});
  SweepOptions s;
  if (!j.contains("parameter") || !j["parameter"].is_string())
    throw ConfigError("sweep.parameter must be a string");
  s.parameter = j["parameter"].get<std::string>();
  if (s.parameter != "m" && s.parameter != "k" && s.parameter != "delta")
    throw ConfigError("sweep.parameter must be \"m\", \"k\" or \"delta\"");
  if (!j.contains("values") || !j["values"].is_array() ||
      j["values"].empty())
    throw ConfigError("sweep.values must be a non-empty array of numbers");
  for (std::size_t i = 0; i < j["values"].size(); ++i) {
    const double v = get_number(j["values"][i],
                                "sweep.values[" + std::to_string(i) + "]");
    if (s.parameter != "delta" && v != std::floor(v))
      throw ConfigError("sweep.values must be integers when sweeping \"" +
                        s.parameter + "\"");
    s.values.push_back(v);
  }
  return s;
}

inline Json complex_echo(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace detail

// Parse and validate a configuration document. Defaults are filled, the
// detuning identity is enforced, and the normalized config is stored in
// `echo` for output metadata. `mode_override` (the --mode flag) replaces
// the document's mode before block requirements are checked.
inline RunConfig parse_config(
    const std::string& text,
    const std::optional<std::string>& mode_override = std::nullopt) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  if (mode_override) doc["mode"] = *mode_override;
  detail::reject_unknown_keys(doc, "config",
                              {"mode", "reservoir", "atom", "jcm", "grid",
                               "numeric", "coherence", "polarization",
                               "sweep"});

  RunConfig cfg;
  if (!doc.contains("mode") || !doc["mode"].is_string())
    throw ConfigError("config is missing the \"mode\" string");
  cfg.mode = parse_mode(doc["mode"].get<std::string>());

  if (doc.contains("numeric")) cfg.numeric = detail::parse_numeric(doc["numeric"]);
  if (doc.contains("reservoir"))
    cfg.reservoir = detail::parse_reservoir(doc["reservoir"]);
  if (doc.contains("atom")) cfg.atom = detail::parse_atom(doc["atom"]);
  if (doc.contains("jcm")) cfg.jcm = detail::parse_jcm(doc["jcm"]);
  if (doc.contains("grid"))
    cfg.grid = detail::parse_grid(doc["grid"], cfg.numeric.step);
  if (doc.contains("coherence"))
    cfg.coherence = detail::parse_coherence(doc["coherence"]);
  if (doc.contains("polarization"))
    cfg.polarization = detail::parse_polarization(doc["polarization"]);
  if (doc.contains("sweep")) cfg.sweep = detail::parse_sweep(doc["sweep"]);

  const auto require = [&](bool present, const char* block) {
    if (!present)
      throw ConfigError(std::string("mode \"") + to_string(cfg.mode) +
                        "\" requires the \"" + block + "\" block");
  };
  switch (cfg.mode) {
    case RunMode::kRate:
      require(cfg.reservoir.has_value(), "reservoir");
      require(cfg.grid.has_value(), "grid");
      break;
    case RunMode::kNullField:
      require(cfg.reservoir.has_value(), "reservoir");
      require(cfg.atom.has_value(), "atom");
      require(cfg.grid.has_value(), "grid");
      break;
    case RunMode::kEvolveCoherence:
      require(cfg.reservoir.has_value(), "reservoir");
      require(cfg.atom.has_value(), "atom");
      require(cfg.grid.has_value(), "grid");
      break;
    case RunMode::kSusyCheck:
      require(cfg.jcm.has_value(), "jcm");
      break;
    case RunMode::kEvolvePolarization:
      require(cfg.jcm.has_value(), "jcm");
      require(cfg.grid.has_value(), "grid");
      break;
    case RunMode::kSweep:
      require(cfg.jcm.has_value(), "jcm");
      require(cfg.grid.has_value(), "grid");
      require(!cfg.sweep.parameter.empty(), "sweep");
      break;
  }

  // Normalized echo (defaults filled, insertion order fixed).
  Json& e = cfg.echo;
  e["mode"] = to_string(cfg.mode);
  if (cfg.reservoir) {
    Json jr;
    jr["modes"] = Json::array();
    for (const auto& m : cfg.reservoir->modes)
      jr["modes"].push_back({{"omega", m.omega}, {"g", m.g}});
    jr["temperature"] = cfg.reservoir->temperature;
    e["reservoir"] = jr;
  }
  if (cfg.atom)
    e["atom"] = Json{{"omega0", cfg.atom->omega0}, {"d", cfg.atom->d}};
  if (cfg.jcm) {
    e["jcm"] = Json{{"g", detail::complex_echo(cfg.jcm->g)},
                    {"k", cfg.jcm->k},
                    {"m", cfg.jcm->m},
                    {"omega0", cfg.jcm->omega0},
                    {"omega", cfg.jcm->omega},
                    {"delta", cfg.jcm->delta}};
  }
  if (cfg.grid)
    e["grid"] = Json{{"start", cfg.grid->start},
                     {"stop", cfg.grid->stop},
                     {"step", cfg.grid->step}};
  e["numeric"] = Json{{"step", cfg.numeric.step},
                      {"sin_threshold", cfg.numeric.sin_threshold},
                      {"fock_dim", cfg.numeric.fock_dim}};
  if (cfg.mode == RunMode::kEvolveCoherence)
    e["coherence"] = Json{{"rho01", detail::complex_echo(cfg.coherence.rho01)},
                          {"rho10", detail::complex_echo(cfg.coherence.rho10)},
                          {"envelope", cfg.coherence.envelope}};
  if (cfg.mode == RunMode::kEvolvePolarization || cfg.mode == RunMode::kSweep)
    e["polarization"] =
        Json{{"rho01", detail::complex_echo(cfg.polarization.rho01)},
             {"rho10", detail::complex_echo(cfg.polarization.rho10)},
             {"c1_mode", cfg.polarization.c1_mode == CoefficientMode::kFullC1
                             ? "full"
                             : "re-only"}};
  if (cfg.mode == RunMode::kSweep)
    e["sweep"] =
        Json{{"parameter", cfg.sweep.parameter}, {"values", cfg.sweep.values}};

  return cfg;
}

}  // namespace cohpol
