#include "syncbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "syncbench/linalg.hpp"
#include "syncbench/losses.hpp"
#include "syncbench/phase.hpp"
#include "syncbench/synthgen.hpp"
#include "syncbench/z2.hpp"

namespace syncbench {

using json = nlohmann::json;

std::string to_string(Model m) { return m == Model::phase ? "phase" : "z2"; }

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::spectral: return "spectral";
    case Estimator::gpm: return "gpm";
    case Estimator::sdp: return "sdp";
    case Estimator::mle: return "mle";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "jsonl";
}

namespace {

Model model_from_string(const std::string& s) {
  if (s == "phase") return Model::phase;
  if (s == "z2") return Model::z2;
  throw ConfigError("unknown model '" + s + "' (expected phase or z2)");
}

Estimator estimator_from_string(const std::string& s) {
  if (s == "spectral") return Estimator::spectral;
  if (s == "gpm") return Estimator::gpm;
  if (s == "sdp") return Estimator::sdp;
  if (s == "mle") return Estimator::mle;
  throw ConfigError("unknown estimator '" + s + "'");
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "jsonl") return OutputFormat::jsonl;
  throw ConfigError("unknown output format '" + s + "' (expected csv or jsonl)");
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> known,
                           const char* where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return key == k;
        }) == known.end())
      throw ConfigError(std::string("unknown field '") + key + "' in " + where);
  }
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.grid.empty()) throw ConfigError("grid must be nonempty");
  for (const auto& g : cfg.grid) {
    try {
      (void)ModelParams::from_sigma2(g.n, g.p, g.sigma2);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("bad grid point: ") + e.what());
    }
  }
  if (cfg.estimators.empty()) throw ConfigError("estimators must be nonempty");
  if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (cfg.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (cfg.max_sweeps < 1) throw ConfigError("max_sweeps must be >= 1");
  if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
  if (cfg.output_path.empty()) throw ConfigError("output_path must be nonempty");
}

// Estimators run (and records sort) in declaration order regardless of how
// the config listed them.
std::vector<Estimator> canonical_estimators(std::vector<Estimator> ests) {
  std::sort(ests.begin(), ests.end());
  ests.erase(std::unique(ests.begin(), ests.end()), ests.end());
  return ests;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_fields(root,
                        {"model", "grid", "estimators", "replicates", "master_seed",
                         "tol", "max_iter", "max_sweeps", "workers", "output_path",
                         "output_format"},
                        "config");

  ExperimentConfig cfg;
  try {
    cfg.model = model_from_string(root.at("model").get<std::string>());

    const json& grid = root.at("grid");
    if (!grid.is_array()) throw ConfigError("grid must be an array");
    for (const json& g : grid) {
      if (!g.is_object()) throw ConfigError("grid entries must be objects");
      reject_unknown_fields(g, {"n", "p", "sigma2"}, "grid entry");
      GridPoint pt;
      pt.n = g.at("n").get<int>();
      pt.p = g.at("p").get<double>();
      pt.sigma2 = g.at("sigma2").get<double>();
      cfg.grid.push_back(pt);
    }

    const json& ests = root.at("estimators");
    if (!ests.is_array()) throw ConfigError("estimators must be an array");
    for (const json& e : ests)
      cfg.estimators.push_back(estimator_from_string(e.get<std::string>()));
    cfg.estimators = canonical_estimators(std::move(cfg.estimators));

    cfg.replicates = root.at("replicates").get<int>();
    cfg.master_seed = root.at("master_seed").get<std::uint64_t>();

    if (root.contains("tol")) cfg.tol = root["tol"].get<double>();
    if (root.contains("max_iter")) cfg.max_iter = root["max_iter"].get<int>();
    if (root.contains("max_sweeps")) cfg.max_sweeps = root["max_sweeps"].get<int>();
    if (root.contains("workers")) cfg.workers = root["workers"].get<int>();
    if (root.contains("output_path"))
      cfg.output_path = root["output_path"].get<std::string>();
    if (root.contains("output_format"))
      cfg.output_format = format_from_string(root["output_format"].get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file: " + path);
  return parse_config(buf.str());
}

TheoreticalBenchmarks theoretical_benchmarks(Model model, int n, double p,
                                             double sigma2) {
  (void)ModelParams::from_sigma2(n, p, sigma2);  // validates
  TheoreticalBenchmarks b;
  const double np = static_cast<double>(n) * p;
  if (model == Model::phase) {
    b.vector = sigma2 / (2.0 * np);
    b.matrix = sigma2 / np;
  } else {
    b.exp_rate = sigma2 > 0.0 ? std::exp(-np / (2.0 * sigma2)) : 0.0;
    b.exact_recovery_threshold_sigma2 = np / (2.0 * std::log(static_cast<double>(n)));
  }
  return b;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

ExperimentRecord base_record(const ExperimentConfig& cfg, const GridPoint& g,
                             int replicate, Estimator est,
                             const TheoreticalBenchmarks& bench) {
  ExperimentRecord r;
  r.model = cfg.model;
  r.n = g.n;
  r.p = g.p;
  r.sigma2 = g.sigma2;
  r.replicate = replicate;
  r.estimator = est;
  r.benchmark_vector = bench.vector;
  r.benchmark_matrix = bench.matrix;
  r.benchmark_exp = bench.exp_rate;
  r.master_seed = cfg.master_seed;
  return r;
}

void run_phase_replicate(const ExperimentConfig& cfg, std::size_t grid_idx,
                         int replicate, std::vector<ExperimentRecord>& out) {
  const GridPoint& g = cfg.grid[grid_idx];
  const ModelParams params = ModelParams::from_sigma2(g.n, g.p, g.sigma2);
  const TheoreticalBenchmarks bench =
      theoretical_benchmarks(cfg.model, g.n, g.p, g.sigma2);
  const SeedSpec seed{cfg.master_seed,
                      grid_idx * static_cast<std::size_t>(cfg.replicates) +
                          static_cast<std::size_t>(replicate)};
  const PhaseVector z_star = sample_truth_phase(g.n, seed);
  const ComplexObservation obs = sample_observation(z_star, params, seed);
  const Eigen::MatrixXcd D0 = obs.hollowed();

  std::optional<RoundedPhases> spectral;
  auto spectral_once = [&]() -> const RoundedPhases& {
    if (!spectral) spectral.emplace(spectral_init(obs));
    return *spectral;
  };
  auto quad = [&](const PhaseVector& z) {
    return Complex(z.entries().dot(D0 * z.entries())).real();
  };
  // vector estimators are scored as matrix estimators through their natural
  // rank-one lift
  auto rank_one_matrix_loss = [&](const PhaseVector& z) {
    return loss_matrix(Eigen::MatrixXcd(z.entries() * z.entries().adjoint()),
                       z_star);
  };

  for (Estimator est : cfg.estimators) {
    ExperimentRecord r = base_record(cfg, g, replicate, est, bench);
    const Clock::time_point t0 = Clock::now();
    try {
      switch (est) {
        case Estimator::spectral: {
          const RoundedPhases& sp = spectral_once();
          r.loss_vector = loss_vector(sp.estimate, z_star).loss;
          r.loss_matrix = rank_one_matrix_loss(sp.estimate);
          r.objective = quad(sp.estimate);
          r.iterations = sp.eig.iterations;
          r.fixed_point_residual = sp.eig.residual;
          r.converged = sp.eig.converged;
          break;
        }
        case Estimator::gpm:
        case Estimator::mle: {
          const PhaseSolve res =
              est == Estimator::gpm
                  ? gpm_run(obs, spectral_once().estimate, cfg.max_iter, cfg.tol)
                  : mle_fixed_point(obs, spectral_once().estimate, cfg.max_iter,
                                    cfg.tol);
          r.loss_vector = loss_vector(res.estimate, z_star).loss;
          r.loss_matrix = rank_one_matrix_loss(res.estimate);
          r.objective = res.diagnostics.objective_trace.back();
          r.iterations = res.diagnostics.iterations;
          r.fixed_point_residual = res.diagnostics.fixed_point_residual;
          r.converged = res.diagnostics.converged;
          break;
        }
        case Estimator::sdp: {
          const LiftedSolve res = sdp_solve(obs, lift(spectral_once().estimate),
                                            cfg.max_sweeps, cfg.tol);
          const Eigen::MatrixXcd G = gram(res.state);
          r.loss_vector = loss_vector(round_to_vector(G).estimate, z_star).loss;
          r.loss_matrix = loss_matrix(G, z_star);
          r.objective = res.diagnostics.objective_trace.back();
          r.iterations = res.diagnostics.iterations;
          r.fixed_point_residual = res.diagnostics.fixed_point_residual;
          r.converged = res.diagnostics.converged;
          break;
        }
      }
    } catch (const std::exception&) {
      r.converged = false;
    }
    r.wall_time_ms = elapsed_ms(t0);
    out.push_back(std::move(r));
  }
}

void run_z2_replicate(const ExperimentConfig& cfg, std::size_t grid_idx,
                      int replicate, std::vector<ExperimentRecord>& out) {
  const GridPoint& g = cfg.grid[grid_idx];
  const ModelParams params = ModelParams::from_sigma2(g.n, g.p, g.sigma2);
  const TheoreticalBenchmarks bench =
      theoretical_benchmarks(cfg.model, g.n, g.p, g.sigma2);
  const SeedSpec seed{cfg.master_seed,
                      grid_idx * static_cast<std::size_t>(cfg.replicates) +
                          static_cast<std::size_t>(replicate)};
  const SignVector z_star = sample_truth_z2(g.n, seed);
  const RealObservation obs = sample_observation_z2(z_star, params, seed);
  const Eigen::MatrixXd D0 = obs.hollowed();

  std::optional<RoundedSigns> spectral;
  auto spectral_once = [&]() -> const RoundedSigns& {
    if (!spectral) spectral.emplace(spectral_init_z2(obs));
    return *spectral;
  };
  auto quad = [&](const SignVector& z) {
    return z.entries().dot(D0 * z.entries());
  };
  auto rank_one_matrix_loss = [&](const SignVector& z) {
    return loss_matrix(Eigen::MatrixXd(z.entries() * z.entries().transpose()),
                       z_star);
  };

  for (Estimator est : cfg.estimators) {
    ExperimentRecord r = base_record(cfg, g, replicate, est, bench);
    const Clock::time_point t0 = Clock::now();
    try {
      switch (est) {
        case Estimator::spectral: {
          const RoundedSigns& sp = spectral_once();
          r.loss_z2 = loss_z2(sp.estimate, z_star);
          r.loss_matrix = rank_one_matrix_loss(sp.estimate);
          r.objective = quad(sp.estimate);
          r.iterations = sp.eig.iterations;
          r.fixed_point_residual = sp.eig.residual;
          r.converged = sp.eig.converged;
          break;
        }
        case Estimator::gpm:
        case Estimator::mle: {
          const Z2Solve res =
              gpm_run_z2(obs, spectral_once().estimate, cfg.max_iter);
          r.loss_z2 = loss_z2(res.estimate, z_star);
          r.loss_matrix = rank_one_matrix_loss(res.estimate);
          r.objective = res.diagnostics.objective_trace.back();
          r.iterations = res.diagnostics.iterations;
          r.fixed_point_residual = res.diagnostics.fixed_point_residual;
          r.converged = res.diagnostics.converged;
          break;
        }
        case Estimator::sdp: {
          const Z2LiftedSolve res = sdp_solve_z2(obs, lift(spectral_once().estimate),
                                                 cfg.max_sweeps, cfg.tol);
          const Eigen::MatrixXd G = gram(res.state);
          r.loss_z2 = loss_z2(round_to_signs(G).estimate, z_star);
          r.loss_matrix = loss_matrix(G, z_star);
          r.objective = res.diagnostics.objective_trace.back();
          r.iterations = res.diagnostics.iterations;
          r.fixed_point_residual = res.diagnostics.fixed_point_residual;
          r.converged = res.diagnostics.converged;
          r.exact_recovery = exact_recovery(res.state, z_star);
          break;
        }
      }
    } catch (const std::exception&) {
      r.converged = false;
    }
    r.wall_time_ms = elapsed_ms(t0);
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.estimators = canonical_estimators(std::move(cfg.estimators));
  validate_config(cfg);

  const std::size_t tasks = cfg.grid.size() * static_cast<std::size_t>(cfg.replicates);
  std::vector<std::vector<ExperimentRecord>> slots(tasks);

  auto run_task = [&](std::size_t task) {
    const std::size_t grid_idx = task / static_cast<std::size_t>(cfg.replicates);
    const int rep = static_cast<int>(task % static_cast<std::size_t>(cfg.replicates));
    try {
      if (cfg.model == Model::phase)
        run_phase_replicate(cfg, grid_idx, rep, slots[task]);
      else
        run_z2_replicate(cfg, grid_idx, rep, slots[task]);
    } catch (const std::exception&) {
      // Sampling itself failed; the estimators never ran. Record the fact
      // rather than aborting the batch.
      slots[task].clear();
      const TheoreticalBenchmarks bench = theoretical_benchmarks(
          cfg.model, cfg.grid[grid_idx].n, cfg.grid[grid_idx].p,
          cfg.grid[grid_idx].sigma2);
      for (Estimator est : cfg.estimators) {
        ExperimentRecord r = base_record(cfg, cfg.grid[grid_idx], rep, est, bench);
        r.converged = false;
        slots[task].push_back(std::move(r));
      }
    }
  };

  int workers = cfg.workers;
  if (workers == 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  if (workers == 1 || tasks <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1))
        run_task(t);
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<int>(workers, static_cast<int>(tasks));
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // Slot order is (grid point, replicate); estimators were emitted in
  // declaration order inside each slot, so concatenation is already sorted.
  std::vector<ExperimentRecord> records;
  records.reserve(tasks * cfg.estimators.size());
  for (auto& slot : slots)
    for (auto& r : slot) records.push_back(std::move(r));
  return records;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

std::string csv_cell(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string csv_cell(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : std::string();
}

void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ExperimentRecord& r : records) {
    out << to_string(r.model) << ',' << r.n << ',' << fmt_double(r.p) << ','
        << fmt_double(r.sigma2) << ',' << r.replicate << ','
        << to_string(r.estimator) << ',' << csv_cell(r.loss_vector) << ','
        << csv_cell(r.loss_matrix) << ',' << csv_cell(r.loss_z2) << ','
        << csv_cell(r.objective) << ',' << csv_cell(r.iterations) << ','
        << csv_cell(r.fixed_point_residual) << ',' << csv_cell(r.converged) << ','
        << csv_cell(r.exact_recovery) << ',' << csv_cell(r.benchmark_vector) << ','
        << csv_cell(r.benchmark_matrix) << ',' << csv_cell(r.benchmark_exp) << ','
        << r.wall_time_ms << ',' << r.master_seed << '\n';
  }
}

void append_json_field(std::string& line, const char* key, const std::string& value,
                       bool quote) {
  if (line.back() != '{') line += ',';
  line += '"';
  line += key;
  line += "\":";
  if (quote) {
    line += '"';
    line += value;
    line += '"';
  } else {
    line += value;
  }
}

template <class T, class Fmt>
void append_optional(std::string& line, const char* key, const std::optional<T>& v,
                     Fmt fmt) {
  if (v) append_json_field(line, key, fmt(*v), false);
}

void emit_jsonl(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  const auto fmt_d = [](double v) { return fmt_double(v); };
  const auto fmt_i = [](int v) { return std::to_string(v); };
  const auto fmt_b = [](bool v) { return std::string(v ? "true" : "false"); };
  for (const ExperimentRecord& r : records) {
    std::string line = "{";
    append_json_field(line, "model", to_string(r.model), true);
    append_json_field(line, "n", std::to_string(r.n), false);
    append_json_field(line, "p", fmt_double(r.p), false);
    append_json_field(line, "sigma2", fmt_double(r.sigma2), false);
    append_json_field(line, "replicate", std::to_string(r.replicate), false);
    append_json_field(line, "estimator", to_string(r.estimator), true);
    append_optional(line, "loss_vector", r.loss_vector, fmt_d);
    append_optional(line, "loss_matrix", r.loss_matrix, fmt_d);
    append_optional(line, "loss_z2", r.loss_z2, fmt_d);
    append_optional(line, "objective", r.objective, fmt_d);
    append_optional(line, "iterations", r.iterations, fmt_i);
    append_optional(line, "fixed_point_residual", r.fixed_point_residual, fmt_d);
    append_optional(line, "converged", r.converged, fmt_b);
    append_optional(line, "exact_recovery", r.exact_recovery, fmt_b);
    append_optional(line, "benchmark_vector", r.benchmark_vector, fmt_d);
    append_optional(line, "benchmark_matrix", r.benchmark_matrix, fmt_d);
    append_optional(line, "benchmark_exp", r.benchmark_exp, fmt_d);
    append_json_field(line, "wall_time_ms", std::to_string(r.wall_time_ms), false);
    append_json_field(line, "master_seed", std::to_string(r.master_seed), false);
    line += '}';
    out << line << '\n';
  }
}

}  // namespace

const char* const kCsvHeader =
    "model,n,p,sigma2,replicate,estimator,loss_vector,loss_matrix,loss_z2,"
    "objective,iterations,fixed_point_residual,converged,exact_recovery,"
    "benchmark_vector,benchmark_matrix,benchmark_exp,wall_time_ms,master_seed";

void emit(const std::vector<ExperimentRecord>& records, OutputFormat format,
          std::ostream& out) {
  if (records.empty())
    throw std::invalid_argument("emit: record list is empty");
  if (format == OutputFormat::csv)
    emit_csv(records, out);
  else
    emit_jsonl(records, out);
  if (!out) throw IoError("emit: stream write failed");
}

void emit(const std::vector<ExperimentRecord>& records, OutputFormat format,
          const std::string& path) {
  if (records.empty())
    throw std::invalid_argument("emit: record list is empty");
  if (path == "-") {
    emit(records, format, std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("emit: stdout write failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit: cannot open output file: " + path);
  emit(records, format, out);
  out.flush();
  if (!out) throw IoError("emit: write failed: " + path);
}

}  // namespace syncbench
