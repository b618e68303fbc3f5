#include "coverart/ga.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coverart/csv.h"

namespace coverart {

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& t) {
  CsvWriter csv(path, {"iteration", "best_fitness", "mean_fitness", "evaluations"});
  for (const auto& r : t)
    csv.row({CsvWriter::num(r.iteration), CsvWriter::num(r.best_fitness),
             CsvWriter::num(r.mean_fitness), CsvWriter::num(r.evaluations)});
}

size_t ga_mutation_count(const GaConfig& cfg) {
  return static_cast<size_t>(
      std::ceil(cfg.mutation_rate * static_cast<double>(cfg.population)));
}

size_t ga_selection_count(const GaConfig& cfg) {
  return static_cast<size_t>(
      std::ceil(cfg.selection_rate * static_cast<double>(cfg.population)));
}

void crossover(const double* a, const double* b, size_t dim, size_t cut,
               double* child_a, double* child_b) {
  if (cut < 1 || cut >= dim) throw std::invalid_argument("crossover: bad cut");
  for (size_t i = 0; i < cut; ++i) {
    child_a[i] = a[i];
    child_b[i] = b[i];
  }
  for (size_t i = cut; i < dim; ++i) {
    child_a[i] = b[i];
    child_b[i] = a[i];
  }
}

GaResult run_ga(const PopulationEval& eval, size_t dim, const GaConfig& cfg) {
  if (dim < 2) throw std::invalid_argument("run_ga: dim must be >= 2");
  if (cfg.population < 2 || cfg.iterations == 0)
    throw std::invalid_argument("run_ga: bad config");
  const size_t N = cfg.population;
  const size_t n_mut = ga_mutation_count(cfg);
  const size_t n_sel = ga_selection_count(cfg);
  if (n_sel == 0 || n_sel > N)
    throw std::invalid_argument("run_ga: selection count out of range");

  Rng rng(cfg.seed);
  std::vector<double> pool(N * dim);
  std::vector<double> survivors;  // n_sel x dim
  std::vector<double> fit(N);
  std::vector<size_t> order(N);

  GaResult res;
  res.best_fitness = -std::numeric_limits<double>::infinity();
  res.best_z.assign(dim, 0.0);

  for (size_t it = 0; it < cfg.iterations; ++it) {
    if (it == 0) {
      for (auto& v : pool) v = rng.normal();
    } else {
      // survivors stay, children fill the rest
      std::copy(survivors.begin(), survivors.end(), pool.begin());
      size_t filled = n_sel;
      while (filled < N) {
        const size_t pa = static_cast<size_t>(rng.below(n_sel));
        const size_t pb = static_cast<size_t>(rng.below(n_sel));
        const size_t cut = 1 + static_cast<size_t>(rng.below(dim - 1));
        double* ca = pool.data() + filled * dim;
        if (filled + 1 < N) {
          crossover(survivors.data() + pa * dim, survivors.data() + pb * dim,
                    dim, cut, ca, ca + dim);
          filled += 2;
        } else {
          // odd remainder: keep only the first child
          std::vector<double> tmp(dim);
          crossover(survivors.data() + pa * dim, survivors.data() + pb * dim,
                    dim, cut, ca, tmp.data());
          filled += 1;
        }
      }
    }

    const std::vector<size_t> mut = rng.pick_distinct(N, n_mut);
    for (const size_t m : mut) {
      double* z = pool.data() + m * dim;
      for (size_t i = 0; i < dim; ++i) z[i] += rng.normal(0.0, cfg.sigma);
    }
    res.mutated_per_iteration.push_back(mut.size());

    eval(pool.data(), N, fit.data());
    res.evaluations += N;

    double mean = 0.0;
    for (size_t r = 0; r < N; ++r) {
      mean += fit[r];
      if (fit[r] > res.best_fitness) {
        res.best_fitness = fit[r];
        std::copy(pool.begin() + r * dim, pool.begin() + (r + 1) * dim,
                  res.best_z.begin());
      }
    }
    mean /= static_cast<double>(N);
    res.trace.push_back({it + 1, res.best_fitness, mean, res.evaluations});

    for (size_t r = 0; r < N; ++r) order[r] = r;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return fit[a] > fit[b]; });
    survivors.assign(n_sel * dim, 0.0);
    for (size_t s = 0; s < n_sel; ++s)
      std::copy(pool.begin() + order[s] * dim,
                pool.begin() + (order[s] + 1) * dim,
                survivors.begin() + s * dim);
  }
  return res;
}

}  // namespace coverart
