#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverart/dense_net.h"
#include "coverart/ga.h"
#include "coverart/image_io.h"

namespace coverart {

struct SweepConfig {
  size_t steps = 11;  // grid 0, 0.1, ..., 1
  GaConfig ga;        // seed derived per step from master_seed
  uint64_t master_seed = 0;
  int genre = -1;     // only for conditional generators
};

struct SweepStep {
  double value;
  Image cover;
  std::vector<double> predicted;
  double fitness;
};

// Clone the base features, overwrite one dimension with each grid value in
// [0,1], and run the GA once per value.
std::vector<SweepStep> feature_sweep(const DenseNet& gen, const DenseNet& pred,
                                     const std::vector<double>& base,
                                     size_t dim_index, const SweepConfig& cfg);

void write_sweep_csv(const std::string& path, size_t dim_index,
                     const std::vector<SweepStep>& steps);

// Spearman rank correlation; ties get average ranks.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace coverart
