#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncbench/types.hpp"

namespace syncbench {

// Config/validation problems (bad JSON, unknown fields, out-of-range values).
// The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem problems while reading configs or writing outputs; exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Model { phase, z2 };

// Declaration order is the canonical record order within a replicate.
enum class Estimator { spectral, gpm, sdp, mle };

enum class OutputFormat { csv, jsonl };

std::string to_string(Model m);
std::string to_string(Estimator e);
std::string to_string(OutputFormat f);

struct GridPoint {
  int n;
  double p;
  double sigma2;
};

struct ExperimentConfig {
  Model model = Model::phase;
  std::vector<GridPoint> grid;
  std::vector<Estimator> estimators;
  int replicates = 1;
  std::uint64_t master_seed = 0;
  // optional overrides
  double tol = 1e-8;
  int max_iter = 200;
  int max_sweeps = 200;
  int workers = 0;  // 0 = hardware concurrency
  std::string output_path = "-";  // "-" = stdout
  OutputFormat output_format = OutputFormat::csv;
};

// Parses and validates a config. Unknown fields are rejected by name, so a
// typo can never silently fall back to a default.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// One estimator run on one synthetic replicate. Optionals are "not
// applicable" (empty CSV cell / omitted JSONL key), not missing data.
struct ExperimentRecord {
  Model model;
  int n;
  double p;
  double sigma2;
  int replicate;
  Estimator estimator;
  std::optional<double> loss_vector;
  std::optional<double> loss_matrix;
  std::optional<double> loss_z2;
  std::optional<double> objective;
  std::optional<int> iterations;
  std::optional<double> fixed_point_residual;
  std::optional<bool> converged;
  std::optional<bool> exact_recovery;
  std::optional<double> benchmark_vector;
  std::optional<double> benchmark_matrix;
  std::optional<double> benchmark_exp;
  std::int64_t wall_time_ms = 0;
  std::uint64_t master_seed = 0;
};

// Closed-form rate targets for one grid point. Phase fills vector/matrix;
// z2 fills exp_rate (0 when sigma2 = 0) and the exact-recovery threshold
// n p / (2 ln n).
struct TheoreticalBenchmarks {
  std::optional<double> vector;
  std::optional<double> matrix;
  std::optional<double> exp_rate;
  std::optional<double> exact_recovery_threshold_sigma2;
};

TheoreticalBenchmarks theoretical_benchmarks(Model model, int n, double p,
                                             double sigma2);

// Runs the full grid x replicates x estimators experiment. Replicates are
// farmed to a worker pool; all streams are keyed by replicate index, so the
// record set is identical for any worker count. Estimators within a
// replicate run sequentially on the same data. A throwing estimator yields a
// record with converged = false; the batch never aborts. Records come back
// sorted by (grid point, replicate, estimator declaration order).
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

// Serializes records (nonempty, or std::invalid_argument). CSV has the fixed
// header below; JSONL mirrors the field names one object per line. Doubles
// are written with 17 significant digits in both formats.
extern const char* const kCsvHeader;
void emit(const std::vector<ExperimentRecord>& records, OutputFormat format,
          std::ostream& out);
void emit(const std::vector<ExperimentRecord>& records, OutputFormat format,
          const std::string& path);

}  // namespace syncbench
