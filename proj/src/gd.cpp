#include "coverart/gd.h"

#include <limits>
#include <stdexcept>

namespace coverart {

GdResult run_gd(const ValueFn& value, const GradFn& grad, size_t dim,
                const GdConfig& cfg) {
  if (cfg.iterations == 0) throw std::invalid_argument("run_gd: bad config");
  std::vector<double> z;
  if (!cfg.z0.empty()) {
    if (cfg.z0.size() != dim)
      throw std::invalid_argument("run_gd: z0 has wrong dimension");
    z = cfg.z0;
  } else {
    Rng rng(cfg.seed);
    z.resize(dim);
    for (auto& v : z) v = rng.normal();
  }

  GdResult res;
  res.best_fitness = -std::numeric_limits<double>::infinity();
  res.best_z = z;
  Optimizer opt(cfg.kind, cfg.lr, dim);
  std::vector<double> neg(dim);

  for (size_t t = 1; t <= cfg.iterations; ++t) {
    const double f = value(z);
    ++res.evaluations;
    if (f > res.best_fitness) {
      res.best_fitness = f;
      res.best_z = z;
    }
    res.trace.push_back({t, res.best_fitness, f, res.evaluations});
    const std::vector<double> g = grad(z);
    for (size_t i = 0; i < dim; ++i) neg[i] = -g[i];  // ascent
    opt.step(z.data(), neg.data());
  }
  res.final_z = z;
  return res;
}

}  // namespace coverart
