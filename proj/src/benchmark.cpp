#include "coverart/benchmark.h"

#include <stdexcept>

#include "coverart/classifier.h"
#include "coverart/csv.h"
#include "coverart/fitness.h"
#include "coverart/generator.h"
#include "coverart/world.h"

namespace coverart {

std::vector<ProcedureSpec> default_roster() {
  return {{"ga", true, OptKind::adam, 0.0},
          {"adam_0.15", false, OptKind::adam, 0.15},
          {"rmsprop_0.15", false, OptKind::rmsprop, 0.15},
          {"adam_0.001", false, OptKind::adam, 0.001},
          {"rmsprop_0.001", false, OptKind::rmsprop, 0.001}};
}

struct Target {
  size_t example_index;
  std::string id;
  int genre;
  std::vector<double> features;
};

// The target list is a fixed property of the test set: the first per_genre
// examples of each genre in stored order.  Repeat runs with different master
// seeds then re-randomize the optimizers, not the task.
static std::vector<Target> pick_targets(
    const std::vector<CoverExample>& test_examples, size_t per_genre) {
  std::vector<size_t> need(kNumGenres, per_genre);
  std::vector<Target> out;
  for (size_t i = 0; i < test_examples.size(); ++i) {
    const CoverExample& ex = test_examples[i];
    if (ex.genre < 0 || need[ex.genre] == 0) continue;
    --need[ex.genre];
    out.push_back({i, ex.id, ex.genre, ex.features});
  }
  for (const size_t n : need)
    if (n > 0)
      throw std::runtime_error(
          "run_benchmark: test set too small for requested targets per genre");
  return out;
}

BenchmarkResult run_benchmark(const DenseNet& gen, const DenseNet& pred,
                              const DenseNet& classifier,
                              const std::vector<CoverExample>& test_examples,
                              const BenchmarkConfig& cfg) {
  const size_t latent_dim = gen.input_dim();
  const size_t image_size = test_examples.at(0).cover.size;
  const Rng master(cfg.master_seed);
  const std::vector<Target> targets =
      pick_targets(test_examples, cfg.targets_per_genre);
  const std::vector<ProcedureSpec> roster = default_roster();

  const size_t gd_iters = cfg.equal_evals
                              ? cfg.ga.iterations * cfg.ga.population
                              : cfg.gd_iterations;

  BenchmarkResult res;
  for (const auto& t : targets) res.target_ids.push_back(t.id);

  for (const auto& proc : roster) {
    ProcedureSummary sum;
    sum.name = proc.name;
    for (size_t j = 0; j < targets.size(); ++j) {
      const Target& t = targets[j];
      BenchmarkCell cell;
      cell.procedure = proc.name;
      cell.target_id = t.id;
      cell.genre = t.genre;
      ++sum.total_cells;

      FitnessContext ctx;
      ctx.pred = &pred;
      ctx.gen = &gen;
      ctx.latent_dim = latent_dim;
      ctx.image_size = image_size;
      ctx.target = t.features;

      const Rng cell_root = master.stream(1000 + j);
      try {
        std::vector<double> best_z;
        if (proc.is_ga) {
          GaConfig gc = cfg.ga;
          gc.seed = cell_root.stream("ga").seed();
          const GaResult r = run_ga(
              [&](const double* Z, size_t n, double* out) {
                fitness_batch(ctx, Z, n, out, true);
              },
              latent_dim, gc);
          best_z = r.best_z;
          cell.fitness = r.best_fitness;
          cell.evaluations = r.evaluations;
        } else {
          GdConfig gc;
          gc.kind = proc.kind;
          gc.lr = proc.lr;
          gc.iterations = gd_iters;
          Rng z0_rng = cell_root.stream("z0");
          gc.z0 = sample_latent(z0_rng, latent_dim);
          const GdResult r = run_gd(
              [&](const std::vector<double>& z) { return fitness_value(ctx, z); },
              [&](const std::vector<double>& z) { return fitness_gradient(ctx, z); },
              latent_dim, gc);
          best_z = r.best_z;
          cell.fitness = r.best_fitness;
          cell.evaluations = r.evaluations;
        }
        cell.cover = render(gen, best_z, image_size);
        cell.mse = feature_mse(predict_features(pred, cell.cover), t.features);
        cell.predicted_genre = classify_genre(classifier, cell.cover);
        cell.ok = true;
        sum.average_mse += cell.mse;
        ++sum.ok_cells;
        if (cell.predicted_genre == t.genre) ++sum.correct_genres;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        res.all_ok = false;
      }
      res.cells.push_back(std::move(cell));
    }
    sum.average_mse =
        sum.ok_cells ? sum.average_mse / static_cast<double>(sum.ok_cells) : 0.0;
    sum.genre_accuracy =
        sum.ok_cells ? static_cast<double>(sum.correct_genres) /
                           static_cast<double>(sum.ok_cells)
                     : 0.0;
    res.summaries.push_back(std::move(sum));
  }
  return res;
}

static const ProcedureSummary& summary_of(const BenchmarkResult& res,
                                          const std::string& name) {
  for (const auto& s : res.summaries)
    if (s.name == name) return s;
  throw std::runtime_error("benchmark summary missing: " + name);
}

static std::string sanitize(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

void write_mse_table(const std::string& path, const BenchmarkResult& res) {
  CsvWriter csv(path, {"procedure", "target_id", "genre", "mse", "average_mse",
                       "evaluations", "status"});
  for (const auto& c : res.cells) {
    const ProcedureSummary& s = summary_of(res, c.procedure);
    csv.row({c.procedure, c.target_id, kGenreNames[c.genre],
             c.ok ? CsvWriter::num(c.mse) : "",
             CsvWriter::num(s.average_mse), CsvWriter::num(c.evaluations),
             c.ok ? "ok" : sanitize("error: " + c.error)});
  }
}

void write_genre_table(const std::string& path, const BenchmarkResult& res) {
  CsvWriter csv(path, {"procedure", "genre_accuracy", "correct", "total"});
  for (const auto& s : res.summaries)
    csv.row({s.name, CsvWriter::num(s.genre_accuracy),
             CsvWriter::num(s.correct_genres), CsvWriter::num(s.ok_cells)});
}

}  // namespace coverart
