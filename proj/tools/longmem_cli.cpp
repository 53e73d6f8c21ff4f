// Command-line front end for the long-memory toolkit: simulation, tapered
// log-periodogram regression, Monte Carlo bandwidth scans, and the
// exact-covariance / distribution-fit verification experiments.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "longmem/csv.hpp"
#include "longmem/errors.hpp"
#include "longmem/farima.hpp"
#include "longmem/gph.hpp"
#include "longmem/harness.hpp"
#include "longmem/innovations.hpp"
#include "longmem/simulate.hpp"
#include "longmem/tapered_dft.hpp"

namespace lm = longmem;

namespace {

using Cfg = std::map<std::string, std::string>;

const std::set<std::string>& allowed_keys() {
  static const std::set<std::string> keys = {
      "model.d",          "model.ar",        "model.ma",
      "innovations.kind", "mc.n",            "mc.replications",
      "mc.seed",          "mc.truncation",   "mc.threads",
      "gph.taper_order",  "gph.bandwidth",   "mse.grid_min",
      "mse.grid_max",     "benchmark.laws",     "decorrelation.n_list",
      "decorrelation.beta",      "decorrelation.regime",   "decorrelation.taper_order",
      "edgeworth.k",      "edgeworth.s",     "edgeworth.reps",
      "output.path",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

Cfg load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lm::ArgumentError("cannot open config file: " + path);
  Cfg kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto pos = t.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (pos == std::string::npos)
      throw lm::ArgumentError("config " + where + ": expected key=value");
    const std::string key = trim(t.substr(0, pos));
    const std::string val = trim(t.substr(pos + 1));
    if (allowed_keys().count(key) == 0)
      throw lm::ArgumentError("config " + where + ": unknown key '" + key + "'");
    if (kv.count(key) != 0)
      throw lm::ArgumentError("config " + where + ": duplicate key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end == s.c_str() || *end != '\0')
    throw lm::ArgumentError("bad numeric value for " + what + ": '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end == s.c_str() || *end != '\0')
    throw lm::ArgumentError("bad integer value for " + what + ": '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::string item;
  for (std::size_t start = 0; start <= s.size();) {
    const auto comma = s.find(',', start);
    item = trim(s.substr(start, comma == std::string::npos ? comma : comma - start));
    if (!item.empty()) out.push_back(parse_double(item, what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t start = 0; start <= s.size();) {
    const auto comma = s.find(',', start);
    const std::string item =
        trim(s.substr(start, comma == std::string::npos ? comma : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// flag > config > default
bool has_setting(const CLI::Option* opt, const Cfg& cfg, const char* key) {
  return (opt != nullptr && opt->count() > 0) || cfg.count(key) > 0;
}
double eff_double(const CLI::Option* opt, double flag_value, const Cfg& cfg,
                  const char* key, double fallback) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : parse_double(it->second, key);
}
std::uint64_t eff_u64(const CLI::Option* opt, std::uint64_t flag_value, const Cfg& cfg,
                      const char* key, std::uint64_t fallback) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : parse_u64(it->second, key);
}
std::string eff_str(const CLI::Option* opt, const std::string& flag_value, const Cfg& cfg,
                    const char* key, const std::string& fallback) {
  if (opt != nullptr && opt->count() > 0) return flag_value;
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

struct CommonOpts {
  std::string config_path;
  double d = 0.0;
  std::string ar, ma, innovation = "gaussian", output;
  CLI::Option *config_opt = nullptr, *d_opt = nullptr, *ar_opt = nullptr,
              *ma_opt = nullptr, *innovation_opt = nullptr, *output_opt = nullptr;

  void add_config(CLI::App* cmd) {
    config_opt = cmd->add_option("--config", config_path,
                                 "flat key=value config file; flags override it");
  }
  void add_model(CLI::App* cmd) {
    d_opt = cmd->add_option("--d", d, "memory parameter, |d| < 0.5 (default 0)");
    ar_opt = cmd->add_option("--ar", ar, "AR coefficients, comma-separated (default none)");
    ma_opt = cmd->add_option("--ma", ma, "MA coefficients, comma-separated (default none)");
  }
  void add_innovation(CLI::App* cmd, const std::string& def = "gaussian") {
    innovation = def;
    innovation_opt =
        cmd->add_option("--innovation", innovation,
                        "innovation law: gaussian|laplace|pareto|cexp (default " + def + ")");
  }
  void add_output(CLI::App* cmd, const std::string& def) {
    output = def;
    output_opt =
        cmd->add_option("--output", output, "output CSV path (default " + def + ")");
  }

  Cfg cfg() const {
    return (config_opt != nullptr && config_opt->count() > 0) ? load_config(config_path)
                                                              : Cfg{};
  }
  lm::FarimaSpec model(const Cfg& cfg) const {
    lm::FarimaSpec spec;
    spec.d = eff_double(d_opt, d, cfg, "model.d", 0.0);
    spec.ar = parse_double_list(eff_str(ar_opt, ar, cfg, "model.ar", ""), "model.ar");
    spec.ma = parse_double_list(eff_str(ma_opt, ma, cfg, "model.ma", ""), "model.ma");
    return spec;
  }
  lm::InnovationSpec innov(const Cfg& cfg) const {
    lm::InnovationSpec spec;
    spec.kind = lm::innovation_kind_from_string(
        eff_str(innovation_opt, innovation, cfg, "innovations.kind", "gaussian"));
    return spec;
  }
  std::string out_path(const Cfg& cfg) const {
    return eff_str(output_opt, output, cfg, "output.path", output);
  }
};

// ---------------------------------------------------------------- simulate
struct SimulateCmd {
  CommonOpts common;
  std::size_t n = 0, truncation = 5000;
  std::uint64_t seed = 0;
  CLI::Option *n_opt, *trunc_opt, *seed_opt;

  void add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand("simulate", "simulate one series to CSV");
    common.add_config(cmd);
    common.add_model(cmd);
    common.add_innovation(cmd);
    common.add_output(cmd, "series.csv");
    n_opt = cmd->add_option("--n", n, "series length");
    trunc_opt = cmd->add_option("--truncation", truncation,
                                "moving-average filter window (default 5000)");
    seed_opt = cmd->add_option("--seed", seed, "master seed (default 0)");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    const std::size_t nn =
        static_cast<std::size_t>(eff_u64(n_opt, n, cfg, "mc.n", 0));
    if (nn == 0) throw lm::ArgumentError("simulate: --n (or mc.n) is required");
    const std::size_t tr = static_cast<std::size_t>(
        eff_u64(trunc_opt, truncation, cfg, "mc.truncation", 5000));
    const std::uint64_t sd = eff_u64(seed_opt, seed, cfg, "mc.seed", 0);
    const lm::FarimaSpec spec = common.model(cfg);
    const lm::InnovationSpec innov = common.innov(cfg);
    const lm::TimeSeries x =
        lm::simulate_truncated_ma(spec, innov, nn, tr, lm::SeedSpec{sd, 0});
    const std::string path = common.out_path(cfg);
    lm::write_series(path, x);
    std::cout << "simulate: n=" << nn << " innovation=" << lm::to_string(innov.kind)
              << " seed=" << sd << " -> " << path << "\n";
  }
};

// ------------------------------------------------------------- periodogram
struct PeriodogramCmd {
  CommonOpts common;
  std::string input;
  int r = 0;
  CLI::Option *input_opt, *r_opt;

  void add(CLI::App& app) {
    CLI::App* cmd =
        app.add_subcommand("periodogram", "tapered periodogram of a series file");
    common.add_config(cmd);
    common.add_output(cmd, "periodogram.csv");
    input_opt = cmd->add_option("--input", input, "input series CSV (header x)")
                    ->required();
    r_opt = cmd->add_option("--r", r, "taper order (default 0)");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    const int rr = static_cast<int>(
        eff_u64(r_opt, static_cast<std::uint64_t>(r), cfg, "gph.taper_order", 0));
    const lm::TimeSeries x = lm::read_series(input);
    const lm::TaperedDft dft = lm::tapered_dft_all(x, rr);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(dft.n_tilde);
    for (std::size_t k = 1; k <= dft.n_tilde; ++k)
      rows.push_back({std::to_string(k), lm::format_double(lm::fourier_freq(k, dft.n)),
                      lm::format_double(dft.periodogram(k))});
    const std::string path = common.out_path(cfg);
    lm::write_csv(path, "k,lambda,periodogram", rows);
    std::cout << "periodogram: n=" << dft.n << " r=" << rr
              << " ordinates=" << dft.n_tilde << " -> " << path << "\n";
  }
};

// --------------------------------------------------------------------- gph
struct GphCmd {
  CommonOpts common;
  std::string input;
  std::size_t n = 0, m = 0, truncation = 5000;
  int r = 0;
  std::uint64_t seed = 0;
  CLI::Option *input_opt, *n_opt, *m_opt, *r_opt, *trunc_opt, *seed_opt;

  void add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "gph", "log-periodogram regression estimate of the memory parameter");
    common.add_config(cmd);
    common.add_model(cmd);
    common.add_innovation(cmd);
    common.add_output(cmd, "gph.csv");
    input_opt = cmd->add_option("--input", input, "input series CSV (header x)");
    n_opt = cmd->add_option("--n", n, "simulate a series of this length instead");
    m_opt = cmd->add_option("--m", m, "bandwidth: number of regression ordinates");
    r_opt = cmd->add_option("--r", r, "taper order (default 0)");
    trunc_opt = cmd->add_option("--truncation", truncation,
                                "simulation filter window (default 5000)");
    seed_opt = cmd->add_option("--seed", seed, "master seed for --n mode (default 0)");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    const std::size_t mm =
        static_cast<std::size_t>(eff_u64(m_opt, m, cfg, "gph.bandwidth", 0));
    if (mm == 0) throw lm::ArgumentError("gph: --m (or gph.bandwidth) is required");
    const int rr = static_cast<int>(
        eff_u64(r_opt, static_cast<std::uint64_t>(r), cfg, "gph.taper_order", 0));
    lm::TimeSeries x;
    if (input_opt->count() > 0) {
      x = lm::read_series(input);
    } else {
      const std::size_t nn =
          static_cast<std::size_t>(eff_u64(n_opt, n, cfg, "mc.n", 0));
      if (nn == 0) throw lm::ArgumentError("gph: need --input or --n");
      const std::size_t tr = static_cast<std::size_t>(
          eff_u64(trunc_opt, truncation, cfg, "mc.truncation", 5000));
      const std::uint64_t sd = eff_u64(seed_opt, seed, cfg, "mc.seed", 0);
      x = lm::simulate_truncated_ma(common.model(cfg), common.innov(cfg), nn, tr,
                                    lm::SeedSpec{sd, 0});
    }
    const lm::GphFit fit = lm::estimate(x, mm, rr);
    std::vector<std::vector<std::string>> rows{
        {std::to_string(x.size()), std::to_string(fit.m),
         std::to_string(fit.taper_order), lm::format_double(fit.d_hat)}};
    const std::string path = common.out_path(cfg);
    lm::write_csv(path, "n,m,r,d_hat", rows);
    std::cout << "gph: n=" << x.size() << " m=" << fit.m << " r=" << fit.taper_order
              << " d_hat=" << lm::format_double(fit.d_hat) << " -> " << path << "\n";
  }
};

// ---------------------------------------------------- mse-scan and benchmark
struct McOpts {
  std::size_t n = 0, replications = 1000, grid_min = 8, grid_max = 0,
              truncation = 5000;
  int r = 1, threads = 0;
  std::uint64_t seed = 0;
  CLI::Option *n_opt, *reps_opt, *gmin_opt, *gmax_opt, *trunc_opt, *r_opt,
      *threads_opt, *seed_opt;

  void add(CLI::App* cmd) {
    n_opt = cmd->add_option("--n", n, "series length");
    reps_opt = cmd->add_option("--replications", replications,
                               "Monte Carlo replications (default 1000)");
    r_opt = cmd->add_option("--r", r, "taper order (default 1)");
    gmin_opt = cmd->add_option("--grid-min", grid_min,
                               "smallest bandwidth on the grid (default 8)");
    gmax_opt = cmd->add_option("--grid-max", grid_max,
                               "largest bandwidth on the grid (default n/6)");
    trunc_opt = cmd->add_option("--truncation", truncation,
                                "simulation filter window (default 5000)");
    threads_opt = cmd->add_option("--threads", threads, "worker threads, 0 = auto");
    seed_opt = cmd->add_option("--seed", seed, "master seed (required)");
  }
  lm::ExperimentConfig build(const CommonOpts& common, const Cfg& cfg,
                             const char* cmd_name) const {
    lm::ExperimentConfig ec;
    ec.model = common.model(cfg);
    ec.innovations = common.innov(cfg);
    ec.n = static_cast<std::size_t>(eff_u64(n_opt, n, cfg, "mc.n", 0));
    if (ec.n == 0)
      throw lm::ArgumentError(std::string(cmd_name) + ": --n (or mc.n) is required");
    ec.replications = static_cast<std::size_t>(
        eff_u64(reps_opt, replications, cfg, "mc.replications", 1000));
    ec.taper_order = static_cast<int>(
        eff_u64(r_opt, static_cast<std::uint64_t>(r), cfg, "gph.taper_order", 1));
    if (!has_setting(seed_opt, cfg, "mc.seed"))
      throw lm::ArgumentError(std::string(cmd_name) +
                              ": a seed is required (--seed or mc.seed)");
    ec.master_seed = eff_u64(seed_opt, seed, cfg, "mc.seed", 0);
    ec.truncation = static_cast<std::size_t>(
        eff_u64(trunc_opt, truncation, cfg, "mc.truncation", 5000));
    ec.threads = static_cast<int>(eff_u64(
        threads_opt, static_cast<std::uint64_t>(threads), cfg, "mc.threads", 0));
    const bool have_min = has_setting(gmin_opt, cfg, "mse.grid_min");
    const bool have_max = has_setting(gmax_opt, cfg, "mse.grid_max");
    if (have_min || have_max) {
      const std::size_t lo =
          static_cast<std::size_t>(eff_u64(gmin_opt, grid_min, cfg, "mse.grid_min", 8));
      const std::size_t hi = static_cast<std::size_t>(
          eff_u64(gmax_opt, grid_max, cfg, "mse.grid_max", ec.n / 6));
      if (hi < lo)
        throw lm::ArgumentError(std::string(cmd_name) + ": empty bandwidth grid");
      for (std::size_t mm = lo; mm <= hi; ++mm) ec.bandwidth_grid.push_back(mm);
    }
    return ec;
  }
};

struct MseScanCmd {
  CommonOpts common;
  McOpts mc;
  std::string dhat_out;
  CLI::Option* dhat_opt;

  void add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "mse-scan", "Monte Carlo bias/MSE over a bandwidth grid");
    common.add_config(cmd);
    common.add_model(cmd);
    common.add_innovation(cmd);
    common.add_output(cmd, "mse_scan.csv");
    mc.add(cmd);
    dhat_opt = cmd->add_option("--dhat-out", dhat_out,
                               "also write the per-replication estimate matrix");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    lm::ExperimentConfig ec = mc.build(common, cfg, "mse-scan");
    ec.keep_replicates = dhat_opt->count() > 0;
    const lm::McResult res = lm::run_mse_experiment(ec);
    const std::string path = common.out_path(cfg);
    lm::write_mse_scan(path, ec, res);
    if (ec.keep_replicates) lm::write_dhat_matrix(dhat_out, res);
    std::size_t opt_gi = 0;
    for (std::size_t gi = 0; gi < res.grid.size(); ++gi)
      if (res.grid[gi] == res.optimal_m) opt_gi = gi;
    std::cout << "mse-scan: n=" << ec.n << " innovation="
              << lm::to_string(ec.innovations.kind) << " reps=" << ec.replications
              << " optimal m=" << res.optimal_m
              << " mse=" << lm::format_double(res.mse[opt_gi])
              << " excluded=" << res.excluded << " -> " << path << "\n";
  }
};

struct BenchmarkCmd {
  CommonOpts common;
  McOpts mc;
  std::string laws = "gaussian,laplace,pareto";
  CLI::Option* laws_opt;

  void add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "benchmark", "optimal bandwidth, bias and MSE per innovation law");
    common.add_config(cmd);
    common.add_model(cmd);
    common.add_output(cmd, "benchmark.csv");
    mc.add(cmd);
    laws_opt = cmd->add_option(
        "--laws", laws, "innovation laws, comma-separated (default gaussian,laplace,pareto)");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    const std::vector<std::string> names =
        split_list(eff_str(laws_opt, laws, cfg, "benchmark.laws", laws));
    if (names.empty()) throw lm::ArgumentError("benchmark: no innovation laws given");
    std::vector<lm::BenchmarkRow> rows;
    std::string summary;
    for (const std::string& name : names) {
      lm::ExperimentConfig ec = mc.build(common, cfg, "benchmark");
      ec.innovations.kind = lm::innovation_kind_from_string(name);
      const lm::McResult res = lm::run_mse_experiment(ec);
      std::size_t opt_gi = 0;
      for (std::size_t gi = 0; gi < res.grid.size(); ++gi)
        if (res.grid[gi] == res.optimal_m) opt_gi = gi;
      rows.push_back({ec.n, name, res.optimal_m, res.bias[opt_gi], res.mse[opt_gi]});
      if (!summary.empty()) summary += " ";
      summary += name + ":m=" + std::to_string(res.optimal_m) +
                 ",mse=" + lm::format_double(res.mse[opt_gi]);
    }
    const std::string path = common.out_path(cfg);
    lm::write_benchmark(path, rows);
    std::cout << "benchmark: n=" << rows[0].n << " " << summary << " -> " << path << "\n";
  }
};

// ----------------------------------------------------------- verify-decorrelation
struct DecorrelationCmd {
  CommonOpts common;
  std::string n_list = "256,512,1024", regime = "local";
  int r = 1;
  double beta = 1.0;
  CLI::Option *nlist_opt, *r_opt, *beta_opt, *regime_opt;

  void add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "verify-decorrelation", "exact DFT covariance decay audit with fitted constants");
    common.add_config(cmd);
    common.add_model(cmd);
    common.add_output(cmd, "decorrelation.csv");
    nlist_opt = cmd->add_option("--n-list", n_list,
                                "sample sizes, comma-separated (default 256,512,1024)");
    r_opt = cmd->add_option("--r", r, "taper order (default 1)");
    beta_opt = cmd->add_option("--beta", beta, "decay exponent beta (default 1)");
    regime_opt =
        cmd->add_option("--regime", regime, "bound regime: local|global (default local)");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    std::vector<std::size_t> ns;
    for (const std::string& item :
         split_list(eff_str(nlist_opt, n_list, cfg, "decorrelation.n_list", n_list)))
      ns.push_back(static_cast<std::size_t>(parse_u64(item, "decorrelation.n_list")));
    if (ns.empty()) throw lm::ArgumentError("verify-decorrelation: empty n list");
    const int rr = static_cast<int>(eff_u64(r_opt, static_cast<std::uint64_t>(r), cfg,
                                            "decorrelation.taper_order", 1));
    lm::DecorrelationParams params;
    params.beta = eff_double(beta_opt, beta, cfg, "decorrelation.beta", 1.0);
    const std::string reg = eff_str(regime_opt, regime, cfg, "decorrelation.regime", "local");
    if (reg == "local")
      params.regime = lm::DecorrelationParams::Regime::local;
    else if (reg == "global")
      params.regime = lm::DecorrelationParams::Regime::global;
    else
      throw lm::ArgumentError("verify-decorrelation: regime must be local or global");
    const std::vector<lm::DecorrelationRow> rows =
        lm::verify_decorrelation(common.model(cfg), rr, ns, {}, params);
    const std::string path = common.out_path(cfg);
    lm::write_decorrelation(path, rows);
    std::string summary;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i == 0 || rows[i].n != rows[i - 1].n) {
        if (!summary.empty()) summary += " ";
        summary += "n=" + std::to_string(rows[i].n) +
                   ":C=" + lm::format_double(rows[i].fitted_c);
      }
    std::cout << "verify-decorrelation: r=" << rr << " " << summary << " -> " << path << "\n";
  }
};

// --------------------------------------------------------- edgeworth-check
struct EdgeworthCmd {
  CommonOpts common;
  std::size_t n = 64, reps = 200000, k = 5;
  int s = 5, threads = 0;
  std::uint64_t seed = 20250819ull;
  CLI::Option *n_opt, *reps_opt, *k_opt, *s_opt, *threads_opt, *seed_opt;

  void add(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "edgeworth-check", "histogram L1 fit of the normalized DFT law vs expansion");
    common.add_config(cmd);
    common.add_innovation(cmd, "cexp");
    common.add_output(cmd, "edgeworth.csv");
    n_opt = cmd->add_option("--n", n, "series length (default 64)");
    reps_opt = cmd->add_option("--reps", reps, "replications (default 200000)");
    k_opt = cmd->add_option("--k", k, "frequency index (default 5)");
    s_opt = cmd->add_option("--s", s, "expansion order 3..5 (default 5)");
    threads_opt = cmd->add_option("--threads", threads, "worker threads, 0 = auto");
    seed_opt = cmd->add_option("--seed", seed, "master seed (default 20250819)");
    cmd->callback([this]() { run(); });
  }
  void run() {
    const Cfg cfg = common.cfg();
    lm::InnovationSpec innov;
    innov.kind = lm::innovation_kind_from_string(eff_str(
        common.innovation_opt, common.innovation, cfg, "innovations.kind", "cexp"));
    const std::size_t nn = static_cast<std::size_t>(eff_u64(n_opt, n, cfg, "mc.n", 64));
    const std::size_t rr = static_cast<std::size_t>(
        eff_u64(reps_opt, reps, cfg, "edgeworth.reps", 200000));
    const std::size_t kk =
        static_cast<std::size_t>(eff_u64(k_opt, k, cfg, "edgeworth.k", 5));
    const int ss = static_cast<int>(
        eff_u64(s_opt, static_cast<std::uint64_t>(s), cfg, "edgeworth.s", 5));
    const std::uint64_t sd = eff_u64(seed_opt, seed, cfg, "mc.seed", 20250819ull);
    const int th = static_cast<int>(eff_u64(
        threads_opt, static_cast<std::uint64_t>(threads), cfg, "mc.threads", 0));
    const lm::EdgeworthFitResult res =
        lm::edgeworth_fit_experiment(innov, nn, rr, kk, ss, sd, th);
    const std::string path = common.out_path(cfg);
    lm::write_edgeworth(path, {res});
    std::cout << "edgeworth-check: n=" << res.n << " innovation="
              << lm::to_string(innov.kind) << " reps=" << res.reps
              << " l1_gauss=" << lm::format_double(res.l1_gauss)
              << " l1_edgeworth=" << lm::format_double(res.l1_edgeworth) << " -> "
              << path << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-memory spectral estimation toolkit"};
  app.require_subcommand(1);

  SimulateCmd simulate_cmd;
  PeriodogramCmd periodogram_cmd;
  GphCmd gph_cmd;
  MseScanCmd mse_scan_cmd;
  BenchmarkCmd benchmark_cmd;
  DecorrelationCmd decorrelation_cmd;
  EdgeworthCmd edgeworth_cmd;
  simulate_cmd.add(app);
  periodogram_cmd.add(app);
  gph_cmd.add(app);
  mse_scan_cmd.add(app);
  benchmark_cmd.add(app);
  decorrelation_cmd.add(app);
  edgeworth_cmd.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const lm::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lm::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lm::DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
