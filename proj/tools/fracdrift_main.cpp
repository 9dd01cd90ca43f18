// fracdrift: simulate and estimate the drift of a linear regression driven by
// fractional-Brownian-motion increments observed at random times, plus the
// seeded Monte Carlo experiment suite around the estimator.
//
// Exit codes: 0 ok, 1 runtime failure, 2 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracdrift/estimator.hpp"
#include "fracdrift/io.hpp"
#include "fracdrift/montecarlo.hpp"
#include "fracdrift/renewal.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using fracdrift::Error;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

// ---------------------------------------------------------------------------
// Config files (--config): flat JSON or flat TOML, keys matching flag names.
// Values are kept as strings and parsed by the same setters the flags use.
// ---------------------------------------------------------------------------

using ConfigMap = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

ConfigMap load_toml_subset(std::istream& in) {
  ConfigMap cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[')
      throw Error("config line " + std::to_string(line_no) +
                  ": tables are not supported, use flat keys");
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(line_no) +
                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '[') {  // array -> comma list
      if (value.back() != ']')
        throw Error("config line " + std::to_string(line_no) +
                    ": unterminated array");
      value = trim(value.substr(1, value.size() - 2));
    }
    cfg[key] = strip_quotes(value);
  }
  return cfg;
}

std::string json_scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

ConfigMap load_json_config(std::istream& in) {
  json j = json::parse(in);
  if (!j.is_object()) throw Error("config must be a JSON object");
  ConfigMap cfg;
  for (const auto& [key, value] : j.items()) {
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += json_scalar_to_string(item);
      }
      cfg[key] = joined;
    } else {
      cfg[key] = json_scalar_to_string(value);
    }
  }
  return cfg;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  char first = 0;
  in >> std::ws;
  first = static_cast<char>(in.peek());
  in.seekg(0);
  if (first == '{') return load_json_config(in);
  return load_toml_subset(in);
}

// Finds --config in raw args before CLI11 runs, so file values can act as
// defaults that explicit flags override.
std::string scan_for_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config") {
      if (i + 1 >= argc) throw Error("--config needs a file path");
      return argv[i + 1];
    }
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return "";
}

// ---------------------------------------------------------------------------
// Flag/config bindings
// ---------------------------------------------------------------------------

std::uint64_t parse_u64(const std::string& s) {
  char* end = nullptr;
  const auto v = std::strtoull(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw Error("not an unsigned integer: '" + s + "'");
  return v;
}

double parse_double_str(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw Error("not a number: '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw Error("not a boolean: '" + s + "'");
}

std::vector<std::size_t> parse_usize_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<std::size_t>(parse_u64(trim(item))));
  return out;
}

struct Binding {
  std::string key;
  CLI::Option* opt;
  std::function<void(const std::string&)> set;
};

class BindingSet {
 public:
  void add(const std::string& key, CLI::Option* opt,
           std::function<void(const std::string&)> set) {
    bindings_.push_back({key, opt, std::move(set)});
  }

  // File values fill in whatever the command line left unset; unknown keys
  // are rejected so config typos cannot silently change an experiment.
  void apply(const ConfigMap& cfg, const std::string& subcommand) const {
    std::set<std::string> known{"subcommand"};
    for (const auto& b : bindings_) known.insert(b.key);
    for (const auto& [key, value] : cfg) {
      if (!known.count(key))
        throw Error("config key '" + key + "' is not a flag of '" +
                    subcommand + "'");
    }
    if (auto it = cfg.find("subcommand");
        it != cfg.end() && it->second != subcommand)
      throw Error("config was written by subcommand '" + it->second +
                  "', not '" + subcommand + "'");
    for (const auto& b : bindings_) {
      if (b.opt->count() > 0) continue;
      if (auto it = cfg.find(b.key); it != cfg.end()) b.set(it->second);
    }
  }

  bool provided(const ConfigMap& cfg, const std::string& key) const {
    for (const auto& b : bindings_)
      if (b.key == key && b.opt->count() > 0) return true;
    return cfg.count(key) > 0;
  }

 private:
  std::vector<Binding> bindings_;
};

std::uint64_t resolve_seed(std::uint64_t flag_value, bool was_provided) {
  if (was_provided) return flag_value;
  if (const char* env = std::getenv("FRACDRIFT_SEED")) return parse_u64(env);
  return 0;
}

void write_text_file(const fs::path& dir, const std::string& name,
                     const std::function<void(std::ostream&)>& writer) {
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  writer(out);
  if (!out) throw Error("write failed: '" + path.string() + "'");
}

void write_run_json(const fs::path& dir, const json& resolved) {
  write_text_file(dir, "run.json",
                  [&](std::ostream& out) { out << resolved.dump(2) << '\n'; });
}

// ---------------------------------------------------------------------------
// Subcommand state
// ---------------------------------------------------------------------------

struct SimulateOpts {
  std::string scheme = "deterministic";
  std::size_t n = 100;
  double hurst = 0.75;
  double sigma = 1.0;
  double a = 1.0;
  std::uint64_t seed = 0;
  std::string out = ".";
};

struct EstimateOpts {
  std::string input;
  double true_a = 0.0;
  bool true_a_given = false;
  std::string format = "csv";
  std::string out = ".";
};

struct ExperimentOpts {
  std::string scheme = "jittered";
  double a = 2.0;
  double hurst = 0.75;
  double sigma = 1.0;
  std::size_t n = 300;
  std::size_t m = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool zero_noise = false;
  std::string out = ".";
};

struct ConvergenceOpts : ExperimentOpts {};

struct RateCheckOpts {
  std::string scheme = "jittered";
  double a = 2.0;
  double hurst = 0.75;
  double sigma = 1.0;
  std::vector<std::size_t> ns;
  std::size_t m = 5000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out = ".";
};

struct DensitiesOpts {
  std::size_t max_index = 5;
  std::size_t n = 5;
  std::size_t sweep_points = 50;
  std::uint64_t seed = 0;
  std::string out = ".";
};

fracdrift::ExperimentConfig to_config(const ExperimentOpts& o) {
  fracdrift::ExperimentConfig cfg;
  cfg.scheme = fracdrift::scheme_from_string(o.scheme);
  cfg.a_true = o.a;
  cfg.hurst = o.hurst;
  cfg.sigma = o.sigma;
  cfg.n = o.n;
  cfg.m = o.m;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.noise = o.zero_noise ? fracdrift::NoiseKind::None
                           : fracdrift::NoiseKind::Fbm;
  return cfg;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

int do_simulate(const SimulateOpts& o) {
  const auto scheme = fracdrift::scheme_from_string(o.scheme);
  const fracdrift::HurstModel model(o.hurst, o.sigma);

  auto rng = fracdrift::RandomStream::child(o.seed, 0);
  fracdrift::TimeGrid grid = [&] {
    switch (scheme) {
      case fracdrift::Scheme::Deterministic:
        return fracdrift::TimeGrid::deterministic(o.n);
      case fracdrift::Scheme::Jittered:
        return fracdrift::TimeGrid::jittered(o.n, rng);
      default:
        return fracdrift::TimeGrid::renewal(o.n, rng);
    }
  }();
  const auto path = fracdrift::sample_path(model, grid.taus(), rng);
  const auto series = fracdrift::simulate(o.a, grid, path);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text_file(dir, "series.csv", [&](std::ostream& out) {
    fracdrift::write_series_csv(out, series);
  });
  write_run_json(dir, json{{"subcommand", "simulate"},
                           {"scheme", o.scheme},
                           {"n", o.n},
                           {"hurst", o.hurst},
                           {"sigma", o.sigma},
                           {"a", o.a},
                           {"seed", o.seed}});
  return kExitOk;
}

int do_estimate(const EstimateOpts& o,
                const fracdrift::ObservationSeries& series) {
  const auto diag = fracdrift::estimate(series);
  if (o.format == "json") {
    json j{{"a_hat", diag.a_hat}, {"d_n", diag.d_n}, {"n", diag.n}};
    if (diag.a_n) j["a_n"] = *diag.a_n;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "a_hat " << fracdrift::format_double(diag.a_hat) << '\n'
              << "d_n " << fracdrift::format_double(diag.d_n) << '\n'
              << "n " << diag.n << '\n';
    if (diag.a_n)
      std::cout << "a_n " << fracdrift::format_double(*diag.a_n) << '\n';
  }

  const fs::path dir(o.out);
  fs::create_directories(dir);
  json resolved{{"subcommand", "estimate"},
                {"input", o.input},
                {"format", o.format}};
  if (o.true_a_given) resolved["true-a"] = o.true_a;
  write_run_json(dir, resolved);
  return kExitOk;
}

json experiment_json(const char* name, const ExperimentOpts& o,
                     bool with_n_max) {
  json j{{"subcommand", name}, {"scheme", o.scheme},   {"a", o.a},
         {"hurst", o.hurst},   {"sigma", o.sigma}};
  j[with_n_max ? "n-max" : "n"] = o.n;
  j["m"] = o.m;
  j["seed"] = o.seed;
  j["zero-noise"] = o.zero_noise;
  return j;
}

int do_experiment(const ExperimentOpts& o) {
  const auto rep = fracdrift::run_table(to_config(o));
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text_file(dir, "estimates.csv", [&](std::ostream& out) {
    fracdrift::write_estimates_csv(out, rep);
  });
  write_text_file(dir, "summary.csv", [&](std::ostream& out) {
    fracdrift::write_summary_csv(out, rep);
  });
  write_text_file(dir, "hist.csv", [&](std::ostream& out) {
    fracdrift::write_hist_csv(out, rep);
  });
  write_run_json(dir, experiment_json("experiment", o, false));
  std::cout << "mean " << fracdrift::format_double(rep.mean) << " sd "
            << fracdrift::format_double(rep.sd) << '\n';
  return kExitOk;
}

int do_convergence(const ConvergenceOpts& o) {
  const auto rep = fracdrift::run_convergence_trace(to_config(o));
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text_file(dir, "trace.csv", [&](std::ostream& out) {
    fracdrift::write_trace_csv(out, rep);
  });
  write_text_file(dir, "summary.csv", [&](std::ostream& out) {
    fracdrift::write_summary_csv(out, rep);
  });
  write_run_json(dir, experiment_json("convergence", o, true));
  return kExitOk;
}

int do_rate_check(const RateCheckOpts& o) {
  fracdrift::ExperimentConfig cfg;
  cfg.scheme = fracdrift::scheme_from_string(o.scheme);
  cfg.a_true = o.a;
  cfg.hurst = o.hurst;
  cfg.sigma = o.sigma;
  cfg.n = o.ns.empty() ? 1 : o.ns.back();
  cfg.m = o.m;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.rate_check_ns = o.ns;

  const auto rep = fracdrift::run_rate_check(cfg);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text_file(dir, "rate.csv", [&](std::ostream& out) {
    fracdrift::write_rate_csv(out, rep);
  });
  json resolved{{"subcommand", "rate-check"}, {"scheme", o.scheme},
                {"a", o.a},                   {"hurst", o.hurst},
                {"sigma", o.sigma},           {"ns", o.ns},
                {"m", o.m},                   {"seed", o.seed}};
  write_run_json(dir, resolved);
  std::cout << "slope " << fracdrift::format_double(rep.rate_fit->slope)
            << " intercept "
            << fracdrift::format_double(rep.rate_fit->intercept) << '\n';
  return kExitOk;
}

int do_densities_check(const DensitiesOpts& o) {
  const auto identities =
      fracdrift::check_integral_identities(o.sweep_points, o.seed, 1e-10);
  const auto norms =
      fracdrift::check_density_normalizations(o.max_index, o.n, 1e-6);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::size_t failures = 0;
  write_text_file(dir, "density_checks.csv", [&](std::ostream& out) {
    out << "check,p1,p2,p3,value,target,error,pass\n";
    for (const auto& row : identities) {
      out << row.name << ',' << fracdrift::format_double(row.p1) << ','
          << fracdrift::format_double(row.p2) << ','
          << fracdrift::format_double(row.p3) << ','
          << fracdrift::format_double(row.quadrature) << ','
          << fracdrift::format_double(row.closed_form) << ','
          << fracdrift::format_double(row.rel_error) << ','
          << (row.pass ? "1" : "0") << '\n';
      failures += row.pass ? 0 : 1;
    }
    for (const auto& row : norms) {
      out << "normalization:" << fracdrift::to_string(row.kind) << ','
          << row.n << ',' << row.i << ',' << (row.j ? std::to_string(*row.j) : "")
          << ',' << fracdrift::format_double(row.mass) << ",1,"
          << fracdrift::format_double(row.abs_error) << ','
          << (row.pass ? "1" : "0") << '\n';
      failures += row.pass ? 0 : 1;
    }
  });
  write_run_json(dir, json{{"subcommand", "densities-check"},
                           {"max-index", o.max_index},
                           {"n", o.n},
                           {"sweep-points", o.sweep_points},
                           {"seed", o.seed}});
  const std::size_t total = identities.size() + norms.size();
  std::cout << (total - failures) << '/' << total << " checks passed\n";
  return failures == 0 ? kExitOk : kExitRuntime;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  const std::string config_path = scan_for_config(argc, argv);
  ConfigMap file_cfg;
  if (!config_path.empty()) file_cfg = load_config_file(config_path);

  CLI::App app{
      "Drift estimation for a linear model driven by fractional Brownian "
      "increments observed at deterministic, jittered or renewal times."};
  app.require_subcommand(1);

  std::string config_flag;  // consumed by the pre-scan; registered so CLI11
                            // accepts it
  SimulateOpts sim;
  EstimateOpts est;
  ExperimentOpts exp;
  ConvergenceOpts conv;
  RateCheckOpts rate;
  DensitiesOpts dens;
  BindingSet sim_b, est_b, exp_b, conv_b, rate_b, dens_b;

  auto add_common = [&](CLI::App* cmd, std::string& out, BindingSet& b) {
    auto* o = cmd->add_option("--out", out, "Output directory");
    b.add("out", o, [&out](const std::string& v) { out = v; });
    cmd->add_option("--config", config_flag,
                    "Load defaults from a JSON or flat TOML file");
  };

  // simulate ------------------------------------------------------------
  auto* sim_cmd =
      app.add_subcommand("simulate", "Write one simulated series.csv");
  {
    auto& b = sim_b;
    b.add("scheme", sim_cmd->add_option("--scheme", sim.scheme,
                                        "deterministic|jittered|renewal"),
          [&](const std::string& v) { sim.scheme = v; });
    b.add("n", sim_cmd->add_option("--n", sim.n, "Grid size"),
          [&](const std::string& v) { sim.n = parse_u64(v); });
    b.add("hurst", sim_cmd->add_option("--hurst", sim.hurst, "Hurst exponent"),
          [&](const std::string& v) { sim.hurst = parse_double_str(v); });
    b.add("sigma", sim_cmd->add_option("--sigma", sim.sigma, "Noise scale"),
          [&](const std::string& v) { sim.sigma = parse_double_str(v); });
    b.add("a", sim_cmd->add_option("--a", sim.a, "True drift"),
          [&](const std::string& v) { sim.a = parse_double_str(v); });
    b.add("seed", sim_cmd->add_option("--seed", sim.seed, "Master seed"),
          [&](const std::string& v) { sim.seed = parse_u64(v); });
    add_common(sim_cmd, sim.out, b);
  }

  // estimate ------------------------------------------------------------
  auto* est_cmd = app.add_subcommand(
      "estimate", "Estimate the drift from a CSV with tau,y columns");
  {
    auto& b = est_b;
    b.add("input",
          est_cmd->add_option("input", est.input, "Input CSV (tau,y columns)"),
          [&](const std::string& v) { est.input = v; });
    b.add("true-a",
          est_cmd->add_option("--true-a", est.true_a,
                              "Known drift; adds the noise functional a_n"),
          [&](const std::string& v) { est.true_a = parse_double_str(v); });
    b.add("format",
          est_cmd->add_option("--format", est.format, "Output format: csv|json"),
          [&](const std::string& v) { est.format = v; });
    add_common(est_cmd, est.out, b);
  }

  // experiment / convergence ---------------------------------------------
  auto add_experiment_flags = [&](CLI::App* cmd, ExperimentOpts& o,
                                  BindingSet& b, bool sweep) {
    b.add("scheme", cmd->add_option("--scheme", o.scheme,
                                    "deterministic|jittered|renewal"),
          [&o](const std::string& v) { o.scheme = v; });
    b.add("a", cmd->add_option("--a", o.a, "True drift"),
          [&o](const std::string& v) { o.a = parse_double_str(v); });
    b.add("hurst", cmd->add_option("--hurst", o.hurst, "Hurst exponent"),
          [&o](const std::string& v) { o.hurst = parse_double_str(v); });
    b.add("sigma", cmd->add_option("--sigma", o.sigma, "Noise scale"),
          [&o](const std::string& v) { o.sigma = parse_double_str(v); });
    b.add(sweep ? "n-max" : "n",
          cmd->add_option(sweep ? "--n-max" : "--n", o.n,
                          sweep ? "Largest grid size of the sweep"
                                : "Grid size"),
          [&o](const std::string& v) { o.n = parse_u64(v); });
    b.add("m", cmd->add_option("--m", o.m, "Replicates"),
          [&o](const std::string& v) { o.m = parse_u64(v); });
    b.add("seed", cmd->add_option("--seed", o.seed, "Master seed"),
          [&o](const std::string& v) { o.seed = parse_u64(v); });
    b.add("threads",
          cmd->add_option("--threads", o.threads,
                          "Worker threads (0 = all cores)"),
          [&o](const std::string& v) {
            o.threads = static_cast<unsigned>(parse_u64(v));
          });
    b.add("zero-noise",
          cmd->add_flag("--zero-noise", o.zero_noise,
                        "Replace the noise with zeros (exactness checks)"),
          [&o](const std::string& v) { o.zero_noise = parse_bool(v); });
    add_common(cmd, o.out, b);
  };

  auto* exp_cmd = app.add_subcommand(
      "experiment", "Monte Carlo summary of a_hat at fixed N");
  add_experiment_flags(exp_cmd, exp, exp_b, false);

  auto* conv_cmd = app.add_subcommand(
      "convergence", "Mean/sd trace of a_hat for N = 1..n-max");
  add_experiment_flags(conv_cmd, conv, conv_b, true);

  // rate-check ------------------------------------------------------------
  auto* rate_cmd = app.add_subcommand(
      "rate-check", "Empirical decay of E[A_N^2] over an N sweep");
  {
    auto& b = rate_b;
    b.add("scheme", rate_cmd->add_option("--scheme", rate.scheme,
                                         "deterministic|jittered|renewal"),
          [&](const std::string& v) { rate.scheme = v; });
    b.add("a", rate_cmd->add_option("--a", rate.a, "True drift"),
          [&](const std::string& v) { rate.a = parse_double_str(v); });
    b.add("hurst", rate_cmd->add_option("--hurst", rate.hurst, "Hurst exponent"),
          [&](const std::string& v) { rate.hurst = parse_double_str(v); });
    b.add("sigma", rate_cmd->add_option("--sigma", rate.sigma, "Noise scale"),
          [&](const std::string& v) { rate.sigma = parse_double_str(v); });
    b.add("ns",
          rate_cmd->add_option("--ns", rate.ns, "Grid sizes (>= 3 distinct)")
              ->delimiter(','),
          [&](const std::string& v) { rate.ns = parse_usize_list(v); });
    b.add("m", rate_cmd->add_option("--m", rate.m, "Replicates per N (>= 2000)"),
          [&](const std::string& v) { rate.m = parse_u64(v); });
    b.add("seed", rate_cmd->add_option("--seed", rate.seed, "Master seed"),
          [&](const std::string& v) { rate.seed = parse_u64(v); });
    b.add("threads",
          rate_cmd->add_option("--threads", rate.threads,
                               "Worker threads (0 = all cores)"),
          [&](const std::string& v) {
            rate.threads = static_cast<unsigned>(parse_u64(v));
          });
    add_common(rate_cmd, rate.out, b);
  }

  // densities-check --------------------------------------------------------
  auto* dens_cmd = app.add_subcommand(
      "densities-check",
      "Verify renewal densities and integral identities against quadrature");
  {
    auto& b = dens_b;
    b.add("max-index",
          dens_cmd->add_option("--max-index", dens.max_index,
                               "Largest density index i"),
          [&](const std::string& v) { dens.max_index = parse_u64(v); });
    b.add("n", dens_cmd->add_option("--n", dens.n, "Largest rate parameter n"),
          [&](const std::string& v) { dens.n = parse_u64(v); });
    b.add("sweep-points",
          dens_cmd->add_option("--sweep-points", dens.sweep_points,
                               "Random parameter points per identity"),
          [&](const std::string& v) { dens.sweep_points = parse_u64(v); });
    b.add("seed", dens_cmd->add_option("--seed", dens.seed, "Sweep seed"),
          [&](const std::string& v) { dens.seed = parse_u64(v); });
    add_common(dens_cmd, dens.out, b);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  // Validation phase: config merge, seed resolution, precondition checks.
  fracdrift::ObservationSeries loaded{fracdrift::TimeGrid::deterministic(1),
                                      {0.0}, std::nullopt};
  std::string active;
  try {
    if (app.got_subcommand(sim_cmd)) {
      active = "simulate";
      sim_b.apply(file_cfg, active);
      sim.seed = resolve_seed(sim.seed, sim_b.provided(file_cfg, "seed"));
      fracdrift::HurstModel probe(sim.hurst, sim.sigma);  // rejects bad H
      if (sim.n == 0) throw Error("--n must be >= 1");
      (void)fracdrift::scheme_from_string(sim.scheme);
    } else if (app.got_subcommand(est_cmd)) {
      active = "estimate";
      est_b.apply(file_cfg, active);
      est.true_a_given = est_cmd->count("--true-a") > 0 ||
                         file_cfg.count("true-a") > 0;
      if (est.input.empty()) throw Error("estimate needs an input CSV path");
      if (est.format != "csv" && est.format != "json")
        throw Error("--format must be csv or json");
      std::ifstream in(est.input);
      if (!in) throw Error("cannot open input '" + est.input + "'");
      loaded = fracdrift::read_series_csv(
          in, est.true_a_given ? std::optional<double>(est.true_a)
                               : std::nullopt);
    } else if (app.got_subcommand(exp_cmd)) {
      active = "experiment";
      exp_b.apply(file_cfg, active);
      exp.seed = resolve_seed(exp.seed, exp_b.provided(file_cfg, "seed"));
      to_config(exp).validate();
    } else if (app.got_subcommand(conv_cmd)) {
      active = "convergence";
      conv_b.apply(file_cfg, active);
      conv.seed = resolve_seed(conv.seed, conv_b.provided(file_cfg, "seed"));
      to_config(conv).validate();
    } else if (app.got_subcommand(rate_cmd)) {
      active = "rate-check";
      rate_b.apply(file_cfg, active);
      rate.seed = resolve_seed(rate.seed, rate_b.provided(file_cfg, "seed"));
      fracdrift::HurstModel probe(rate.hurst, rate.sigma);
      if (rate.ns.empty()) throw Error("--ns is required");
      (void)fracdrift::scheme_from_string(rate.scheme);
    } else if (app.got_subcommand(dens_cmd)) {
      active = "densities-check";
      dens_b.apply(file_cfg, active);
      dens.seed = resolve_seed(dens.seed, dens_b.provided(file_cfg, "seed"));
      if (dens.max_index == 0 || dens.n == 0)
        throw Error("--max-index and --n must be >= 1");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  // Execution phase.
  try {
    if (active == "simulate") return do_simulate(sim);
    if (active == "estimate") return do_estimate(est, loaded);
    if (active == "experiment") return do_experiment(exp);
    if (active == "convergence") return do_convergence(conv);
    if (active == "rate-check") return do_rate_check(rate);
    if (active == "densities-check") return do_densities_check(dens);
  } catch (const fracdrift::DomainError& e) {
    // Precondition surfaced late (e.g. rate-check sweep shape).
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
