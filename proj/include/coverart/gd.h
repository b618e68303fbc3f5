#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coverart/ga.h"
#include "coverart/optim.h"

namespace coverart {

using ValueFn = std::function<double(const std::vector<double>&)>;
using GradFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct GdConfig {
  OptKind kind = OptKind::adam;
  double lr = 0.15;
  size_t iterations = 400;
  uint64_t seed = 0;
  std::vector<double> z0;  // empty -> standard normal draw from seed
};

struct GdResult {
  std::vector<double> best_z;
  double best_fitness = 0.0;
  std::vector<double> final_z;
  std::vector<TraceRow> trace;
  size_t evaluations = 0;
};

// Gradient ascent on the fitness with Adam or RMSprop.  Each iteration
// evaluates the current iterate (tracking the best ever seen) and then
// steps along the gradient; the budget is exactly `iterations` evaluations.
GdResult run_gd(const ValueFn& value, const GradFn& grad, size_t dim,
                const GdConfig& cfg);

}  // namespace coverart
