// syncbench: Monte Carlo driver for the synchronization estimators.
//
//   syncbench run --config cfg.json [--workers N]
//   syncbench quick --model phase --n 200 --p 1 --sigma2 4 --reps 10 \
//       --seed 1 [--estimators sdp,gpm] [--out out.csv] [--format csv]
//   syncbench benchmarks --model z2 --n 300 --p 1 --sigma2 15
//
// Records go to the output file (or stdout for "-"); everything else goes to
// stderr. Exit codes: 0 ok, 1 config/validation problem, 2 I/O problem.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syncbench/harness.hpp"

namespace {

using namespace syncbench;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int do_run(const std::string& config_path, int workers_override) {
  ExperimentConfig cfg = load_config(config_path);
  if (workers_override >= 0) cfg.workers = workers_override;
  const std::vector<ExperimentRecord> records = run_experiment(cfg);
  emit(records, cfg.output_format, cfg.output_path);
  std::cerr << "syncbench: wrote " << records.size() << " records to "
            << (cfg.output_path == "-" ? std::string("stdout") : cfg.output_path)
            << '\n';
  return 0;
}

int do_quick(const std::string& model, int n, double p, double sigma2, int reps,
             std::uint64_t seed, const std::vector<std::string>& estimators,
             const std::string& out, const std::string& format, int workers) {
  // Route through the JSON front door so quick obeys exactly the same
  // validation as run.
  std::string est_json;
  for (const std::string& e : estimators) {
    if (!est_json.empty()) est_json += ',';
    est_json += '"' + e + '"';
  }
  const std::string cfg_json = std::string("{") + "\"model\":\"" + model +
                               "\",\"grid\":[{\"n\":" + std::to_string(n) +
                               ",\"p\":" + fmt17(p) +
                               ",\"sigma2\":" + fmt17(sigma2) +
                               "}],\"estimators\":[" + est_json +
                               "],\"replicates\":" + std::to_string(reps) +
                               ",\"master_seed\":" + std::to_string(seed) +
                               ",\"workers\":" + std::to_string(workers < 0 ? 0 : workers) +
                               ",\"output_path\":" +
                               nlohmann::json(out).dump() +
                               ",\"output_format\":\"" + format + "\"}";
  ExperimentConfig cfg = parse_config(cfg_json);
  const std::vector<ExperimentRecord> records = run_experiment(cfg);
  emit(records, cfg.output_format, cfg.output_path);
  std::cerr << "syncbench: wrote " << records.size() << " records to "
            << (cfg.output_path == "-" ? std::string("stdout") : cfg.output_path)
            << '\n';
  return 0;
}

int do_benchmarks(const std::string& model, int n, double p, double sigma2) {
  const Model m = model == "phase" ? Model::phase
                  : model == "z2"
                      ? Model::z2
                      : throw ConfigError("unknown model '" + model + "'");
  const TheoreticalBenchmarks b = theoretical_benchmarks(m, n, p, sigma2);
  std::string line = "{\"model\":\"" + model + "\",\"n\":" + std::to_string(n) +
                     ",\"p\":" + fmt17(p) + ",\"sigma2\":" + fmt17(sigma2);
  if (b.vector) line += ",\"benchmark_vector\":" + fmt17(*b.vector);
  if (b.matrix) line += ",\"benchmark_matrix\":" + fmt17(*b.matrix);
  if (b.exp_rate) line += ",\"benchmark_exp\":" + fmt17(*b.exp_rate);
  if (b.exact_recovery_threshold_sigma2)
    line += ",\"exact_recovery_threshold_sigma2\":" +
            fmt17(*b.exact_recovery_threshold_sigma2);
  line += "}";
  std::cout << line << '\n';
  return std::cout ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo harness for phase and sign synchronization"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path;
  int run_workers = -1;
  run->add_option("--config", config_path, "Path to the experiment config")
      ->required();
  run->add_option("--workers", run_workers, "Override the worker count");

  // quick
  auto* quick = app.add_subcommand("quick", "Run a single grid point");
  std::string model = "phase";
  int n = 0, reps = 0, quick_workers = -1;
  double p = 1.0, sigma2 = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> estimators{"spectral", "gpm", "sdp", "mle"};
  std::string out = "-", format = "csv";
  quick->add_option("--model", model, "phase or z2")->required();
  quick->add_option("--n", n, "Problem size")->required();
  quick->add_option("--p", p, "Edge probability")->required();
  quick->add_option("--sigma2", sigma2, "Noise variance")->required();
  quick->add_option("--reps", reps, "Replicates")->required();
  quick->add_option("--seed", seed, "Master seed")->required();
  quick->add_option("--estimators", estimators, "Comma-separated estimator list")
      ->delimiter(',');
  quick->add_option("--out", out, "Output path, - for stdout");
  quick->add_option("--format", format, "csv or jsonl");
  quick->add_option("--workers", quick_workers, "Worker count");

  // benchmarks
  auto* bench = app.add_subcommand("benchmarks", "Print closed-form rate targets");
  std::string bmodel;
  int bn = 0;
  double bp = 1.0, bsigma2 = 0.0;
  bench->add_option("--model", bmodel, "phase or z2")->required();
  bench->add_option("--n", bn, "Problem size")->required();
  bench->add_option("--p", bp, "Edge probability")->required();
  bench->add_option("--sigma2", bsigma2, "Noise variance")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) return do_run(config_path, run_workers);
    if (*quick)
      return do_quick(model, n, p, sigma2, reps, seed, estimators, out, format,
                      quick_workers);
    return do_benchmarks(bmodel, bn, bp, bsigma2);
  } catch (const IoError& e) {
    std::cerr << "syncbench: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "syncbench: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "syncbench: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "syncbench: unexpected error: " << e.what() << '\n';
    return 1;
  }
}
