#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coverart/rng.h"

namespace coverart {

struct TraceRow {
  size_t iteration;
  double best_fitness;  // best ever seen up to this iteration
  double mean_fitness;  // population mean (GA) / current iterate (GD)
  size_t evaluations;
};

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& t);

// Scores a whole population: out[i] = fitness of row i of Z.
using PopulationEval =
    std::function<void(const double* Z, size_t n, double* out)>;

struct GaConfig {
  size_t population = 250;
  double mutation_rate = 0.05;   // fraction of the pool mutated per generation
  double selection_rate = 0.20;  // fraction kept as survivors
  double sigma = 0.1;            // mutation noise std, all coordinates
  size_t iterations = 200;
  uint64_t seed = 0;
};

struct GaResult {
  std::vector<double> best_z;
  double best_fitness = 0.0;
  std::vector<TraceRow> trace;
  size_t evaluations = 0;
  std::vector<size_t> mutated_per_iteration;
};

size_t ga_mutation_count(const GaConfig& cfg);   // ceil(m * N)
size_t ga_selection_count(const GaConfig& cfg);  // ceil(k * N)

// Single-cut crossover: cut is in [1, dim-1]; child_a takes the prefix of a,
// child_b the prefix of b.
void crossover(const double* a, const double* b, size_t dim, size_t cut,
               double* child_a, double* child_b);

// One generation per iteration: refill the pool to N by crossing uniformly
// sampled survivor pairs (generation 0 starts from N standard-normal draws),
// mutate a without-replacement sample of ceil(m*N) individuals from the full
// pool, evaluate everyone, then keep the top ceil(k*N) by fitness (stable
// ties).  The returned individual is the best ever evaluated.
GaResult run_ga(const PopulationEval& eval, size_t dim, const GaConfig& cfg);

}  // namespace coverart
