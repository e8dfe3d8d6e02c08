// experiments.hpp - named experiments, flat key=value configs, table outputs
#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "qkt/classical_map.hpp"
#include "qkt/ensemble.hpp"
#include "qkt/table.hpp"
#include "qkt/version.hpp"

namespace qkt {

enum class OutputFormat { csv, json };

namespace detail {

inline std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

inline double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
  return value;
}

inline std::int64_t parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::int64_t value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ConfigError("config key '" + key + "': not an integer: '" + text + "'");
  return value;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (true) {
    const auto at = text.find(sep, from);
    if (at == std::string::npos) {
      out.push_back(text.substr(from));
      return out;
    }
    out.push_back(text.substr(from, at - from));
    from = at + 1;
  }
}

inline std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace detail

// Flat key=value configuration. Values are kept as strings; typed getters
// parse on demand and raise ConfigError with the offending key.
struct RunConfig {
  std::string experiment;
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  const std::string& get_str(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
  }

  double get_double(const std::string& key) const {
    return detail::parse_double(key, get_str(key));
  }

  int get_int(const std::string& key) const {
    return static_cast<int>(detail::parse_int(key, get_str(key)));
  }

  std::uint64_t get_u64(const std::string& key) const {
    const std::int64_t v = detail::parse_int(key, get_str(key));
    if (v < 0) throw ConfigError("config key '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
  }

  // Comma list ("0.5,2.5,7") or inclusive range ("3.5:6.5:0.25").
  std::vector<double> get_double_list(const std::string& key) const {
    const std::string& text = get_str(key);
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
      const auto parts = detail::split(text, ':');
      if (parts.size() != 3)
        throw ConfigError("config key '" + key + "': range must be first:last:step");
      const double first = detail::parse_double(key, parts[0]);
      const double last = detail::parse_double(key, parts[1]);
      const double step = detail::parse_double(key, parts[2]);
      if (!(step > 0.0) || last < first)
        throw ConfigError("config key '" + key + "': bad range");
      for (double v = first; v <= last + 1e-9; v += step) out.push_back(v);
      return out;
    }
    for (const auto& part : detail::split(text, ','))
      out.push_back(detail::parse_double(key, part));
    if (out.empty()) throw ConfigError("config key '" + key + "' is empty");
    return out;
  }

  std::vector<int> get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (const auto& part : detail::split(get_str(key), ','))
      out.push_back(static_cast<int>(detail::parse_int(key, part)));
    return out;
  }

  std::string canonical() const {
    std::string out = "experiment=" + experiment;
    for (const auto& [key, value] : values) out += ";" + key + "=" + value;
    return out;
  }

  std::string config_hash() const {
    return detail::hex64(detail::fnv1a64(canonical()));
  }
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> defaults;
  std::vector<Table> (*run)(const RunConfig&, unsigned workers);
};

namespace detail {

inline std::string fmt_pi_over_2() { return format_double(0.5 * pi); }

inline SpinSpace space_from_config(const RunConfig& cfg) {
  if (cfg.has("j")) {
    try {
      return SpinSpace::from_j(cfg.get_double("j"));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("config key 'j': ") + e.what());
    }
  }
  const int d = cfg.get_int("d");
  if (d < 1) throw ConfigError("config key 'd' must be positive");
  return SpinSpace::from_dim(d);
}

inline int positive_int(const RunConfig& cfg, const std::string& key) {
  const int value = cfg.get_int(key);
  if (value < 1) throw ConfigError("config key '" + key + "' must be >= 1");
  return value;
}

inline EnsembleSpec ensemble_from_config(const RunConfig& cfg) {
  EnsembleSpec spec;
  spec.count = cfg.get_int("ensemble_count");
  if (spec.count < 1) throw ConfigError("config key 'ensemble_count' must be >= 1");
  spec.seed = cfg.get_u64("seed");
  const std::string& sampling = cfg.get_str("sampling");
  if (sampling == "uniform-theta-phi")
    spec.sampling = Sampling::uniform_theta_phi;
  else if (sampling == "uniform-sphere")
    spec.sampling = Sampling::uniform_sphere;
  else
    throw ConfigError("config key 'sampling' must be uniform-theta-phi or uniform-sphere");
  return spec;
}

inline CoarseGraining cg_from_config(const RunConfig& cfg, int d) {
  const std::string& spec = cfg.get_str("cg");
  try {
    if (spec == "half-half") return half_half_partition(d);
    if (spec == "half-half-swapped") return half_half_partition_swapped(d);
    if (spec == "auto") return dynamics_partition(d);
    if (spec.rfind("uniform:", 0) == 0)
      return uniform_partition(d, static_cast<int>(parse_int("cg", spec.substr(8))));
  } catch (const IndivisibleBlock& e) {
    throw ConfigError(std::string("config key 'cg': ") + e.what());
  }
  throw ConfigError("config key 'cg' must be half-half, half-half-swapped, auto or uniform:<mu>");
}

inline std::string describe_partition(const CoarseGraining& cg) {
  const auto& vols = cg.volumes();
  if (std::all_of(vols.begin(), vols.end(), [&](int v) { return v == vols[0]; }))
    return "uniform:" + format_int(vols[0]);
  if (cg == dynamics_partition(cg.dim()) && cg.dim() % 8 == 0) return "half-half";
  if (cg == half_half_partition_swapped(cg.dim())) return "half-half-swapped";
  if (cg == mu2_partition_merged(cg.dim())) return "uniform:2+merged-remainder";
  return "custom:" + format_int(cg.block_count()) + "-blocks";
}

inline std::vector<std::pair<std::string, std::string>> common_meta(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("experiment", cfg.experiment);
  meta.emplace_back("version", version);
  meta.emplace_back("config_hash", cfg.config_hash());
  for (const auto& [key, value] : cfg.values) meta.emplace_back(key, value);
  return meta;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// experiment runners
// ---------------------------------------------------------------------------

namespace experiments {

inline std::vector<Table> phase_space(const RunConfig& cfg, unsigned /*workers*/) {
  const std::vector<double> kappas = cfg.get_double_list("kappa");
  const int n_init = detail::positive_int(cfg, "n_init");
  const int steps = detail::positive_int(cfg, "steps");
  const std::uint64_t seed = cfg.get_u64("seed");

  std::vector<Table> tables;
  for (double kappa : kappas) {
    Table t;
    t.name = "phase_space_kappa_" + format_double(kappa);
    t.meta = detail::common_meta(cfg);
    t.meta.emplace_back("kappa_value", format_double(kappa));
    t.columns = {"traj_id", "step", "theta", "phi"};
    for (const PortraitPoint& p : phase_portrait(kappa, n_init, steps, seed))
      t.add_row({std::int64_t{p.traj}, std::int64_t{p.step}, p.theta, p.phi});
    tables.push_back(std::move(t));
  }
  return tables;
}

inline std::vector<Table> oe_vs_coarse_graining(const RunConfig& cfg, unsigned workers) {
  const SpinSpace space = detail::space_from_config(cfg);
  const std::vector<double> kappas = cfg.get_double_list("kappa");
  const int steps = detail::positive_int(cfg, "steps");
  const double alpha = cfg.get_double("alpha");
  const EnsembleSpec spec = detail::ensemble_from_config(cfg);

  // coarse-graining lengths: powers of two dividing d
  std::vector<int> mus;
  for (int mu = 1; mu <= space.dim; mu *= 2)
    if (space.dim % mu == 0) mus.push_back(mu);
  std::vector<CoarseGraining> partitions;
  partitions.reserve(mus.size());
  for (int mu : mus) partitions.push_back(uniform_partition(space.dim, mu));

  const std::vector<StateVector> states = sample_states(space, spec);
  const auto count = states.size();

  auto mean_over_members = [&](const std::vector<std::vector<double>>& slots,
                               std::size_t mu_index) {
    double acc = 0.0;
    for (std::size_t m = 0; m < count; ++m) acc += slots[m][mu_index];
    return acc / static_cast<double>(count);
  };

  Table t;
  t.name = "oe_vs_coarse_graining";
  t.meta = detail::common_meta(cfg);
  t.columns = {"curve", "kappa", "mu", "log_mu", "oe_mean"};

  std::vector<std::vector<double>> slots(count, std::vector<double>(mus.size()));
  parallel_for(count, workers, [&](std::size_t m) {
    for (std::size_t k = 0; k < mus.size(); ++k)
      slots[m][k] = observational_entropy(states[m], partitions[k]).total;
  });
  for (std::size_t k = 0; k < mus.size(); ++k)
    t.add_row({std::string("unevolved"), std::string(""), std::int64_t{mus[k]},
               std::log(static_cast<double>(mus[k])), mean_over_members(slots, k)});

  for (double kappa : kappas) {
    const ComplexMatrix u = floquet_unitary({space, kappa, alpha});
    parallel_for(count, workers, [&](std::size_t m) {
      StateVector psi = states[m];
      for (int step = 0; step < steps; ++step) psi = detail::advance_state(u, psi);
      for (std::size_t k = 0; k < mus.size(); ++k)
        slots[m][k] = observational_entropy(psi, partitions[k]).total;
    });
    for (std::size_t k = 0; k < mus.size(); ++k)
      t.add_row({std::string("evolved"), format_double(kappa), std::int64_t{mus[k]},
                 std::log(static_cast<double>(mus[k])), mean_over_members(slots, k)});
  }
  return {std::move(t)};
}

inline std::vector<Table> oe_dynamics(const RunConfig& cfg, unsigned workers) {
  const SpinSpace space = detail::space_from_config(cfg);
  const std::vector<double> kappas = cfg.get_double_list("kappa");
  const int steps = detail::positive_int(cfg, "steps");
  const double alpha = cfg.get_double("alpha");
  const int fit_first = cfg.get_int("fit_first");
  const int fit_last = cfg.get_int("fit_last");
  if (fit_first < 0 || fit_first >= fit_last || fit_last > steps)
    throw ConfigError("fit window must satisfy 0 <= fit_first < fit_last <= steps");
  const EnsembleSpec spec = detail::ensemble_from_config(cfg);
  const CoarseGraining cg = detail::cg_from_config(cfg, space.dim);
  const double oe_max = std::log(static_cast<double>(space.dim));

  Table series;
  series.name = "oe_dynamics_series";
  series.meta = detail::common_meta(cfg);
  series.meta.emplace_back("cg_layout", detail::describe_partition(cg));
  series.columns = {"kappa", "step", "oe_mean"};

  Table gaps;
  gaps.name = "oe_dynamics_log_approach";
  gaps.meta = series.meta;
  gaps.meta.emplace_back("oe_max", format_double(oe_max));
  gaps.columns = {"kappa", "step", "log_gap"};

  Table fits;
  fits.name = "oe_dynamics_fits";
  fits.meta = gaps.meta;
  fits.columns = {"kappa", "slope", "intercept", "residual", "window_first", "window_last"};

  for (double kappa : kappas) {
    const TimeSeries ts =
        averaged_series({space, kappa, alpha}, OEQuantity{cg}, spec, steps, workers);
    for (std::size_t t = 0; t < ts.values.size(); ++t)
      series.add_row({kappa, std::int64_t{ts.steps[t]}, ts.values[t]});
    if (kappa < 4.0) continue;  // approach-to-saturation regime only
    for (int t = fit_first; t <= fit_last && t < static_cast<int>(ts.values.size()); ++t)
      gaps.add_row({kappa, std::int64_t{t},
                    std::log(oe_max - ts.values[static_cast<std::size_t>(t)])});
    const FitResult fit = fit_exponential_approach(ts, oe_max, fit_first, fit_last);
    fits.add_row({kappa, fit.slope, fit.intercept, fit.residual,
                  std::int64_t{fit.window_first}, std::int64_t{fit.window_last}});
  }

  std::vector<Table> tables;
  tables.push_back(std::move(series));
  tables.push_back(std::move(gaps));
  tables.push_back(std::move(fits));
  return tables;
}

inline std::vector<Table> growth_rates(const RunConfig& cfg, unsigned workers) {
  const std::vector<int> dims = cfg.get_int_list("dims");
  const std::vector<double> kappas = cfg.get_double_list("kappa");
  const double alpha = cfg.get_double("alpha");
  const EnsembleSpec spec = detail::ensemble_from_config(cfg);

  Table rates;
  rates.name = "growth_rates";
  rates.meta = detail::common_meta(cfg);
  rates.columns = {"d", "kappa", "lambda_oe", "lambda_q"};

  Table fits;
  fits.name = "growth_rates_fits";
  fits.meta = rates.meta;
  fits.columns = {"d", "quantity", "slope", "intercept", "residual"};

  for (int d : dims) {
    const SpinSpace space = SpinSpace::from_dim(d);
    const CoarseGraining cg = detail::cg_from_config(cfg, d);
    std::vector<double> loe, lq;
    for (double kappa : kappas) {
      const KickedTopParams params{space, kappa, alpha};
      loe.push_back(lambda_oe(averaged_series(params, OEQuantity{cg}, spec, 3, workers)));
      lq.push_back(lambda_q(averaged_series(params, OTOCQuantity{}, spec, 3, workers)));
      rates.add_row({std::int64_t{d}, kappa, loe.back(), lq.back()});
    }
    if (kappas.size() >= 2) {
      const FitResult foe = linear_fit(kappas, loe);
      const FitResult fq = linear_fit(kappas, lq);
      fits.add_row({std::int64_t{d}, std::string("lambda_oe"), foe.slope,
                    foe.intercept, foe.residual});
      fits.add_row({std::int64_t{d}, std::string("lambda_q"), fq.slope,
                    fq.intercept, fq.residual});
    }
  }

  std::vector<Table> tables;
  tables.push_back(std::move(rates));
  tables.push_back(std::move(fits));
  return tables;
}

inline std::vector<Table> small_j(const RunConfig& cfg, unsigned workers) {
  const std::vector<double> j_list = cfg.get_double_list("j_list");
  const double kappa = cfg.get_double("kappa");
  const double alpha = cfg.get_double("alpha");
  const int steps = detail::positive_int(cfg, "steps");
  const EnsembleSpec spec = detail::ensemble_from_config(cfg);

  Table otoc_table;
  otoc_table.name = "small_j_otoc";
  otoc_table.meta = detail::common_meta(cfg);
  otoc_table.columns = {"j", "step", "otoc_mean"};

  Table oe_table;
  oe_table.name = "small_j_oe";
  oe_table.meta = detail::common_meta(cfg);
  oe_table.columns = {"j", "step", "oe_mean"};

  for (double j : j_list) {
    const SpinSpace space = SpinSpace::from_j(j);
    const CoarseGraining cg = detail::cg_from_config(cfg, space.dim);
    oe_table.meta.emplace_back("cg_layout_d" + format_int(space.dim),
                               detail::describe_partition(cg));
    const KickedTopParams params{space, kappa, alpha};
    const TimeSeries otoc_ts = averaged_series(params, OTOCQuantity{}, spec, steps, workers);
    const TimeSeries oe_ts = averaged_series(params, OEQuantity{cg}, spec, steps, workers);
    for (std::size_t t = 0; t < otoc_ts.values.size(); ++t)
      otoc_table.add_row({j, std::int64_t{otoc_ts.steps[t]}, otoc_ts.values[t]});
    for (std::size_t t = 0; t < oe_ts.values.size(); ++t)
      oe_table.add_row({j, std::int64_t{oe_ts.steps[t]}, oe_ts.values[t]});
  }

  std::vector<Table> tables;
  tables.push_back(std::move(otoc_table));
  tables.push_back(std::move(oe_table));
  return tables;
}

inline std::vector<Table> saddle_vs_chaos(const RunConfig& cfg, unsigned /*workers*/) {
  const SpinSpace space = detail::space_from_config(cfg);
  const double kappa = cfg.get_double("kappa");
  const double alpha = cfg.get_double("alpha");
  const int steps = cfg.get_int("steps");
  if (steps < 2) throw ConfigError("config key 'steps' must be >= 2");
  const double delta = cfg.get_double("delta");
  const CoarseGraining cg = detail::cg_from_config(cfg, space.dim);

  // tail begins at four Ehrenfest times (at least 20 steps in)
  int tail_start = 20;
  if (kappa > 2.0)
    tail_start = std::max(tail_start,
                          static_cast<int>(std::lround(4.0 * ehrenfest_time(space, kappa))));
  tail_start = std::min(tail_start, steps - 1);

  const ComplexMatrix u = floquet_unitary({space, kappa, alpha});

  struct Point {
    const char* label;
    double theta, phi;
  };
  const Point points[2] = {{"saddle", 0.5 * pi, 0.5 * pi},
                           {"chaotic", 0.25 * pi, 0.25 * pi}};

  Table fotoc_table;
  fotoc_table.name = "saddle_vs_chaos_fotoc";
  fotoc_table.meta = detail::common_meta(cfg);
  fotoc_table.columns = {"point", "step", "value"};

  Table oe_table;
  oe_table.name = "saddle_vs_chaos_oe";
  oe_table.meta = fotoc_table.meta;
  oe_table.meta.emplace_back("cg_layout", detail::describe_partition(cg));
  oe_table.columns = {"point", "step", "value"};

  Table stats_table;
  stats_table.name = "saddle_vs_chaos_stats";
  stats_table.meta = fotoc_table.meta;
  stats_table.meta.emplace_back("tail_start", format_int(tail_start));
  stats_table.columns = {"point", "quantity", "tail_start", "mean", "stddev", "max_excursion"};

  for (const Point& point : points) {
    const StateVector psi = coherent_state(space, point.theta, point.phi);
    const TimeSeries f = fotoc(psi, delta, u, steps);
    const TimeSeries s = oe_series(psi, cg, u, steps);
    for (std::size_t t = 0; t < f.values.size(); ++t)
      fotoc_table.add_row({std::string(point.label), std::int64_t{f.steps[t]}, f.values[t]});
    for (std::size_t t = 0; t < s.values.size(); ++t)
      oe_table.add_row({std::string(point.label), std::int64_t{s.steps[t]}, s.values[t]});
    for (const auto& [quantity, ts] : {std::pair<const char*, const TimeSeries&>{"fotoc", f},
                                       {"oe", s}}) {
      const TailStats st = fluctuation_stats(ts, tail_start);
      stats_table.add_row({std::string(point.label), std::string(quantity),
                           std::int64_t{tail_start}, st.mean, st.stddev, st.max_excursion});
    }
  }

  std::vector<Table> tables;
  tables.push_back(std::move(fotoc_table));
  tables.push_back(std::move(oe_table));
  tables.push_back(std::move(stats_table));
  return tables;
}

}  // namespace experiments

inline const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> registry = [] {
    const std::string alpha = detail::fmt_pi_over_2();
    std::vector<ExperimentInfo> r;
    r.push_back({"phase_space",
                 "classical phase portraits for a list of kicking strengths",
                 {{"kappa", "0.5,2.5,7"}, {"n_init", "200"}, {"steps", "500"},
                  {"seed", "1"}, {"format", "csv"}},
                 &experiments::phase_space});
    r.push_back({"oe_vs_coarse_graining",
                 "mean OE against coarse-graining length, evolved vs unevolved states",
                 {{"d", "1024"}, {"kappa", "0.5,2.5,7"}, {"steps", "50"},
                  {"alpha", alpha}, {"ensemble_count", "100"}, {"seed", "1"},
                  {"sampling", "uniform-theta-phi"}, {"format", "csv"}},
                 &experiments::oe_vs_coarse_graining});
    r.push_back({"oe_dynamics",
                 "ensemble-averaged OE time series and saturation-approach fits",
                 {{"d", "400"}, {"kappa", "0.5,2.5,4,4.5,7"}, {"steps", "50"},
                  {"alpha", alpha}, {"cg", "half-half"}, {"ensemble_count", "100"},
                  {"seed", "1"}, {"sampling", "uniform-theta-phi"},
                  {"fit_first", "0"}, {"fit_last", "5"}, {"format", "csv"}},
                 &experiments::oe_dynamics});
    r.push_back({"growth_rates",
                 "initial OE and OTOC growth rates against kicking strength, with linear fits",
                 {{"dims", "400,1000"}, {"kappa", "3.5:6.5:0.25"}, {"alpha", alpha},
                  {"cg", "half-half"}, {"ensemble_count", "100"}, {"seed", "1"},
                  {"sampling", "uniform-theta-phi"}, {"format", "csv"}},
                 &experiments::growth_rates});
    r.push_back({"small_j",
                 "OTOC and OE dynamics deep in the quantum regime (small j)",
                 {{"j_list", "0.5,1.5,2.5,3.5,4.5"},
                  {"kappa", format_double(1.5 * pi)}, {"steps", "50"},
                  {"alpha", alpha}, {"cg", "auto"}, {"ensemble_count", "100"},
                  {"seed", "1"}, {"sampling", "uniform-theta-phi"}, {"format", "csv"}},
                 &experiments::small_j});
    r.push_back({"saddle_vs_chaos",
                 "long-time FOTOC and OE fluctuations: saddle point vs chaotic point",
                 {{"d", "400"}, {"kappa", "2.5"}, {"steps", "200"},
                  {"delta", "0.01"}, {"alpha", alpha}, {"cg", "half-half"},
                  {"format", "csv"}},
                 &experiments::saddle_vs_chaos});
    return r;
  }();
  return registry;
}

inline const ExperimentInfo& find_experiment(const std::string& name) {
  for (const auto& info : experiment_registry())
    if (info.name == name) return info;
  throw ConfigError("unknown experiment '" + name + "' (see 'qkt-oe list')");
}

// Parses flat key=value text ('#' comments and blank lines allowed).
inline std::vector<std::pair<std::string, std::string>> parse_config_text(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t line_no = 0;
  for (const std::string& raw : detail::split(text, '\n')) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + format_int(static_cast<std::int64_t>(line_no)) +
                        ": expected key=value");
    pairs.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return pairs;
}

// Defaults <- config file <- --set overrides; unknown keys are errors.
inline RunConfig make_run_config(
    const std::string& experiment,
    const std::vector<std::pair<std::string, std::string>>& file_pairs,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  const ExperimentInfo& info = find_experiment(experiment);
  RunConfig cfg;
  cfg.experiment = experiment;
  for (const auto& [key, value] : info.defaults) cfg.values[key] = value;

  auto apply = [&](const std::pair<std::string, std::string>& kv) {
    const auto& [key, value] = kv;
    if (key == "experiment") {
      if (value != experiment)
        throw ConfigError("config names experiment '" + value +
                          "' but '" + experiment + "' was requested");
      return;
    }
    // d and j are interchangeable ways to pick the Hilbert space
    const bool dims_key = (key == "d" || key == "j") &&
                          (cfg.values.count("d") > 0 || cfg.values.count("j") > 0);
    if (cfg.values.count(key) == 0 && !dims_key)
      throw ConfigError("unknown config key '" + key + "' for experiment '" +
                        experiment + "'");
    if (dims_key) {
      cfg.values.erase("d");
      cfg.values.erase("j");
    }
    cfg.values[key] = value;
  };
  for (const auto& kv : file_pairs) apply(kv);
  for (const auto& kv : overrides) apply(kv);
  return cfg;
}

inline RunConfig load_run_config(const std::string& experiment,
                                 const std::string& config_path,
                                 const std::vector<std::string>& set_args) {
  std::vector<std::pair<std::string, std::string>> file_pairs;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    file_pairs = parse_config_text(text);
  }
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const std::string& arg : set_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + arg + "'");
    overrides.emplace_back(detail::trim(arg.substr(0, eq)),
                           detail::trim(arg.substr(eq + 1)));
  }
  return make_run_config(experiment, file_pairs, overrides);
}

inline std::vector<Table> run_experiment(const RunConfig& cfg, unsigned workers = 0) {
  if (workers == 0) workers = worker_count();
  return find_experiment(cfg.experiment).run(cfg, workers);
}

inline OutputFormat output_format(const RunConfig& cfg) {
  const std::string fmt = cfg.has("format") ? cfg.get_str("format") : "csv";
  if (fmt == "csv") return OutputFormat::csv;
  if (fmt == "json") return OutputFormat::json;
  throw ConfigError("config key 'format' must be csv or json");
}

inline std::vector<std::filesystem::path> write_outputs(
    const std::vector<Table>& tables, const std::filesystem::path& dir,
    OutputFormat format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const Table& table : tables) {
    const char* ext = format == OutputFormat::csv ? ".csv" : ".json";
    const std::filesystem::path path = dir / (table.name + ext);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file '" + path.string() + "'");
    out << (format == OutputFormat::csv ? to_csv(table) : to_json(table));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace qkt
