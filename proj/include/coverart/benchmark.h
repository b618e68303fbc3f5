#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverart/dataset.h"
#include "coverart/dense_net.h"
#include "coverart/ga.h"
#include "coverart/gd.h"

namespace coverart {

struct ProcedureSpec {
  std::string name;
  bool is_ga = false;
  OptKind kind = OptKind::adam;
  double lr = 0.0;
};

// The five benchmarked procedures: the GA and the four gradient baselines.
std::vector<ProcedureSpec> default_roster();

struct BenchmarkConfig {
  uint64_t master_seed = 0;
  size_t targets_per_genre = 2;
  GaConfig ga;              // seed is derived per cell from the master seed
  size_t gd_iterations = 400;
  bool equal_evals = false; // give GD the GA's evaluation budget
};

struct BenchmarkCell {
  std::string procedure;
  std::string target_id;
  int genre = -1;
  bool ok = false;
  std::string error;
  double mse = 0.0;
  double fitness = 0.0;
  size_t evaluations = 0;
  Image cover;
  int predicted_genre = -1;
};

struct ProcedureSummary {
  std::string name;
  double average_mse = 0.0;
  double genre_accuracy = 0.0;
  size_t ok_cells = 0, total_cells = 0, correct_genres = 0;
};

struct BenchmarkResult {
  std::vector<BenchmarkCell> cells;  // procedure-major, targets in order
  std::vector<ProcedureSummary> summaries;
  std::vector<std::string> target_ids;
  bool all_ok = true;
};

// Targets: the first targets_per_genre test examples of each genre in stored
// order, so the task is fixed and the master seed only re-randomizes the
// optimizers.  Every cell derives its own RNG stream from the master seed;
// all four gradient variants share the same start point per target so they
// differ only in the update rule.
BenchmarkResult run_benchmark(const DenseNet& gen, const DenseNet& pred,
                              const DenseNet& classifier,
                              const std::vector<CoverExample>& test_examples,
                              const BenchmarkConfig& cfg);

// CSV with one row per (procedure, target): per-cell MSE plus the
// procedure's average repeated on each row.
void write_mse_table(const std::string& path, const BenchmarkResult& res);

// CSV with one row per procedure: genre accuracy of the optimized covers.
void write_genre_table(const std::string& path, const BenchmarkResult& res);

}  // namespace coverart
