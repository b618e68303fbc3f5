#include "coverart/sweep.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coverart/csv.h"
#include "coverart/fitness.h"
#include "coverart/generator.h"
#include "coverart/world.h"

namespace coverart {

std::vector<SweepStep> feature_sweep(const DenseNet& gen, const DenseNet& pred,
                                     const std::vector<double>& base,
                                     size_t dim_index, const SweepConfig& cfg) {
  if (cfg.steps < 2) throw std::invalid_argument("feature_sweep: steps >= 2");
  if (dim_index >= kNumFeatures)
    throw std::invalid_argument("feature_sweep: bad feature index");
  const Rng master(cfg.master_seed);
  const size_t latent_dim =
      cfg.genre >= 0 ? gen.input_dim() - kNumGenres : gen.input_dim();
  const size_t side = static_cast<size_t>(
      std::lround(std::sqrt(static_cast<double>(gen.output_dim()) / 3.0)));

  std::vector<SweepStep> out;
  for (size_t s = 0; s < cfg.steps; ++s) {
    const double value =
        static_cast<double>(s) / static_cast<double>(cfg.steps - 1);
    FitnessContext ctx;
    ctx.pred = &pred;
    ctx.gen = &gen;
    ctx.latent_dim = latent_dim;
    ctx.genre = cfg.genre;
    ctx.target = base;
    ctx.target[dim_index] = value;

    GaConfig gc = cfg.ga;
    gc.seed = master.stream(2000 + s).seed();
    const GaResult r = run_ga(
        [&](const double* Z, size_t n, double* scores) {
          fitness_batch(ctx, Z, n, scores, true);
        },
        latent_dim, gc);

    SweepStep step;
    step.value = value;
    step.cover = render(gen, r.best_z, side, cfg.genre);
    step.predicted = predict_features(pred, step.cover);
    step.fitness = r.best_fitness;
    out.push_back(std::move(step));
  }
  return out;
}

void write_sweep_csv(const std::string& path, size_t dim_index,
                     const std::vector<SweepStep>& steps) {
  std::vector<std::string> header = {"step", "swept_feature", "grid_value",
                                     "fitness"};
  for (size_t i = 0; i < kNumFeatures; ++i)
    header.push_back(std::string("predicted_") + kFeatureNames[i]);
  CsvWriter csv(path, header);
  for (size_t s = 0; s < steps.size(); ++s) {
    std::vector<std::string> cells = {
        CsvWriter::num(s), kFeatureNames[dim_index],
        CsvWriter::num(steps[s].value), CsvWriter::num(steps[s].fitness)};
    for (size_t i = 0; i < kNumFeatures; ++i)
      cells.push_back(CsvWriter::num(steps[s].predicted[i]));
    csv.row(cells);
  }
}

static std::vector<double> ranks(const std::vector<double>& v) {
  const size_t n = v.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman: need two equal-size samples");
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0.0, va = 0.0, vb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = ra[i] - ma, db = rb[i] - mb;
    num += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return num / std::sqrt(va * vb);
}

}  // namespace coverart
