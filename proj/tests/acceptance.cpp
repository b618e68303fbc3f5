// End-to-end acceptance checklist.  Ten checks cover the analytic gradient,
// the genetic-search invariants, convergence on a convex oracle, the central
// benchmark claim (genetic search beats every gradient baseline), genre
// preservation, the adversarial-training ablation, the distribution metric,
// the feature sweep, CLI rerun reproducibility, and file-format round trips.
//
// Each check prints exactly one [PASS]/[FAIL] line on stdout; progress goes
// to stderr.  The exit code is the number of failed checks.
//
//   acceptance            run everything
//   acceptance --list     name the checks
//   acceptance --only 3,7 run a subset

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coverart/benchmark.h"
#include "coverart/classifier.h"
#include "coverart/commands.h"
#include "coverart/dataset.h"
#include "coverart/fitness.h"
#include "coverart/frechet.h"
#include "coverart/ga.h"
#include "coverart/gd.h"
#include "coverart/generator.h"
#include "coverart/image_io.h"
#include "coverart/sweep.h"
#include "coverart/weights_io.h"
#include "coverart/world.h"

using namespace coverart;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// ---------------------------------------------------------------------------
// Canonical study configuration shared by the heavyweight checks.

constexpr uint64_t kWorldSeed = 1001;
constexpr uint64_t kDataSeed = 42;   // dataset sampling
constexpr uint64_t kTrainSeed = 42;  // predictor / classifier training
constexpr size_t kLatentDim = 32;
constexpr size_t kImageSize = 32;
constexpr size_t kTrainPerGenre = 300;
constexpr size_t kTestPerGenre = 12;
constexpr std::array<uint64_t, 5> kMasterSeeds = {1, 2, 3, 4, 5};

double secs(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void progress(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  std::vfprintf(stderr, fmt, ap);
  va_end(ap);
  std::fflush(stderr);
}

// Lazily built shared state so `--only N` pays only for what it needs.
struct Context {
  const SyntheticWorld& world() {
    if (!world_) {
      progress("  [setup] building world (seed %llu)...\n",
               (unsigned long long)kWorldSeed);
      WorldConfig wc;
      wc.seed = kWorldSeed;
      wc.latent_dim = kLatentDim;
      wc.image_size = kImageSize;
      world_ = std::make_unique<SyntheticWorld>(build_world(wc));
    }
    return *world_;
  }

  const std::vector<CoverExample>& train() {
    if (train_.empty()) {
      progress("  [setup] sampling %zu train covers...\n",
               kTrainPerGenre * kNumGenres);
      Rng rng = Rng(kDataSeed).stream("dataset");
      train_ = sample_examples(world(), kTrainPerGenre, rng);
      test_ = sample_examples(world(), kTestPerGenre, rng);
    }
    return train_;
  }

  const std::vector<CoverExample>& test() {
    train();
    return test_;
  }

  const FitnessTrainResult& fit9() {
    if (!fit9_) {
      train();
      progress("  [setup] training predictor (adversarial weight 9)...\n");
      const auto t0 = Clock::now();
      FitnessTrainConfig tc;
      tc.seed = kTrainSeed;
      fit9_ = std::make_unique<FitnessTrainResult>(train_fitness(train_, tc));
      progress("  [setup] predictor done in %.0fs (val MSE %.5f)\n", secs(t0),
               fit9_->final_val_mse);
    }
    return *fit9_;
  }

  const FitnessTrainResult& fit0() {
    if (!fit0_) {
      train();
      progress("  [setup] training predictor (adversarial weight 0)...\n");
      const auto t0 = Clock::now();
      FitnessTrainConfig tc;
      tc.seed = kTrainSeed;
      tc.lambda = 0.0;
      fit0_ = std::make_unique<FitnessTrainResult>(train_fitness(train_, tc));
      progress("  [setup] predictor done in %.0fs (val MSE %.5f)\n", secs(t0),
               fit0_->final_val_mse);
    }
    return *fit0_;
  }

  const DenseNet& classifier() {
    if (!clf_) {
      train();
      progress("  [setup] training genre classifier...\n");
      const auto t0 = Clock::now();
      ClassifierTrainConfig cc;
      cc.seed = derive_seed(kTrainSeed, hash_tag("classifier"));
      clf_ = std::make_unique<DenseNet>(train_genre_classifier(train_, cc));
      progress("  [setup] classifier done in %.0fs\n", secs(t0));
    }
    return *clf_;
  }

  // The search generator; identical to the world's frozen decoder.
  const DenseNet& generator() {
    if (!gen_) {
      GeneratorConfig gc;
      gc.seed = derive_seed(kWorldSeed, hash_tag("decoder"));
      gc.latent_dim = kLatentDim;
      gc.image_size = kImageSize;
      gen_ = std::make_unique<DenseNet>(build_generator(gc));
    }
    return *gen_;
  }

  // One full benchmark per master seed; cached so the genre check can reuse
  // the feature-MSE check's runs.
  const std::vector<BenchmarkResult>& benchmarks(std::vector<double>* times) {
    if (bench_.empty()) {
      const DenseNet& gen = generator();
      const DenseNet& pred = fit9().predictor;
      const DenseNet& clf = classifier();
      for (const uint64_t master : kMasterSeeds) {
        const auto t0 = Clock::now();
        BenchmarkConfig bc;
        bc.master_seed = master;
        bc.targets_per_genre = 2;
        bc.ga.population = 250;
        bc.ga.iterations = 200;
        bc.gd_iterations = 400;
        BenchmarkResult r = run_benchmark(gen, pred, clf, test(), bc);
        bench_times_.push_back(secs(t0));
        progress("  [bench] master seed %llu done in %.0fs\n",
                 (unsigned long long)master, bench_times_.back());
        for (const auto& s : r.summaries)
          progress("    %-14s avg MSE %.5f  genre acc %.3f\n", s.name.c_str(),
                   s.average_mse, s.genre_accuracy);
        bench_.push_back(std::move(r));
      }
    }
    if (times) *times = bench_times_;
    return bench_;
  }

 private:
  std::unique_ptr<SyntheticWorld> world_;
  std::vector<CoverExample> train_, test_;
  std::unique_ptr<FitnessTrainResult> fit9_, fit0_;
  std::unique_ptr<DenseNet> clf_, gen_;
  std::vector<BenchmarkResult> bench_;
  std::vector<double> bench_times_;
};

Context ctx;

// ---------------------------------------------------------------------------
// 1. Analytic latent gradient vs central finite differences.

bool check_gradient() {
  FitnessContext fc;
  const DenseNet& gen = ctx.generator();
  const DenseNet& pred = ctx.fit9().predictor;
  const auto t0 = Clock::now();  // timed region excludes the one-time setup
  fc.gen = &gen;
  fc.pred = &pred;
  fc.latent_dim = kLatentDim;
  fc.image_size = kImageSize;

  const double h = 1e-5;
  double worst = 0.0;
  Rng rng(777);
  const size_t pairs = 50;
  for (size_t p = 0; p < pairs; ++p) {
    const std::vector<double> z = sample_latent(rng, kLatentDim);
    fc.target.resize(kNumFeatures);
    for (auto& v : fc.target) v = 0.05 + 0.9 * rng.uniform01();
    const std::vector<double> g = fitness_gradient(fc, z);
    for (size_t j = 0; j < kLatentDim; ++j) {
      std::vector<double> zp = z, zm = z;
      zp[j] += h;
      zm[j] -= h;
      const double fd = (fitness_value(fc, zp) - fitness_value(fc, zm)) / (2 * h);
      const double rel = std::abs(g[j] - fd) / std::max(1.0, std::abs(fd));
      worst = std::max(worst, rel);
    }
  }
  const double dt = secs(t0);
  const bool ok = worst < 1e-5 && dt < 30.0;
  std::printf("[%s] 01 latent gradient matches central differences "
              "(%zu pairs, max rel err %.2e, %.1fs)\n",
              ok ? "PASS" : "FAIL", pairs, worst, dt);
  return ok;
}

// ---------------------------------------------------------------------------
// 2. Genetic-search invariants over many seeds/configs, plus bitwise
//    reproducibility of a real-fitness run across thread counts.

bool check_ga_invariants() {
  bool ok = true;
  std::string why;

  // 24 (config, seed) combinations on a cheap quadratic score.
  const size_t pops[] = {20, 33, 50, 64};
  const double muts[] = {0.03, 0.05, 0.17};
  const double sels[] = {0.1, 0.2};
  size_t combo = 0;
  for (const size_t pop : pops)
    for (const double mu : muts)
      for (const double se : sels) {
        GaConfig cfg;
        cfg.population = pop;
        cfg.mutation_rate = mu;
        cfg.selection_rate = se;
        cfg.iterations = 8 + combo % 5;
        cfg.seed = 5000 + combo;
        const size_t dim = 4 + 2 * (combo % 3);
        ++combo;

        std::vector<size_t> batches;
        const auto eval = [dim, &batches](const double* Z, size_t n,
                                          double* out) {
          batches.push_back(n);
          for (size_t i = 0; i < n; ++i) {
            double s = 0;
            for (size_t j = 0; j < dim; ++j) s += Z[i * dim + j] * Z[i * dim + j];
            out[i] = -s;
          }
        };
        const GaResult r = run_ga(eval, dim, cfg);

        if (batches.size() != cfg.iterations) { ok = false; why = "generation count"; }
        for (const size_t n : batches)
          if (n != cfg.population) { ok = false; why = "population size"; }
        if (r.evaluations != cfg.iterations * cfg.population) {
          ok = false; why = "evaluation budget";
        }
        for (const size_t m : r.mutated_per_iteration)
          if (m != ga_mutation_count(cfg)) { ok = false; why = "mutation count"; }
        for (size_t i = 1; i < r.trace.size(); ++i)
          if (r.trace[i].best_fitness < r.trace[i - 1].best_fitness) {
            ok = false; why = "best-ever monotonicity";
          }

        batches.clear();
        const GaResult r2 = run_ga(eval, dim, cfg);
        if (r2.best_z != r.best_z || r2.best_fitness != r.best_fitness) {
          ok = false; why = "same-seed determinism";
        }
      }

  // Real fitness (frozen generator + untrained predictor) at 1, 2 and 4
  // threads must agree bitwise.
  Rng prng(31415);
  const DenseNet pred = build_predictor(kImageSize, prng);
  const DenseNet& gen = ctx.generator();
  FitnessContext fc;
  fc.gen = &gen;
  fc.pred = &pred;
  fc.latent_dim = kLatentDim;
  fc.image_size = kImageSize;
  fc.target.assign(kNumFeatures, 0.5);

  GaConfig cfg;
  cfg.population = 24;
  cfg.iterations = 6;
  cfg.seed = 2718;
  const int max_threads = omp_get_max_threads();
  std::vector<GaResult> runs;
  for (const int t : {1, 2, 4}) {
    omp_set_num_threads(t);
    runs.push_back(run_ga(
        [&](const double* Z, size_t n, double* s) {
          fitness_batch(fc, Z, n, s, true);
        },
        kLatentDim, cfg));
  }
  omp_set_num_threads(max_threads);
  for (size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].best_z != runs[0].best_z ||
        runs[i].best_fitness != runs[0].best_fitness) {
      ok = false;
      why = "thread-count reproducibility";
    }
    for (size_t k = 0; k < runs[0].trace.size(); ++k)
      if (runs[i].trace[k].mean_fitness != runs[0].trace[k].mean_fitness) {
        ok = false;
        why = "thread-count reproducibility (trace)";
      }
  }

  std::printf("[%s] 02 genetic-search invariants hold over %zu configs and "
              "runs are thread-count independent%s%s\n",
              ok ? "PASS" : "FAIL", combo, ok ? "" : ": ",
              ok ? "" : why.c_str());
  return ok;
}

// ---------------------------------------------------------------------------
// 3. Convex oracle: both search families must recover a known optimum.

bool check_convex_oracle() {
  const auto t0 = Clock::now();
  const size_t dim = 8;
  const auto value = [](const std::vector<double>& z) {
    double s = 0;
    for (const double v : z) s += (v - 0.2) * (v - 0.2);
    return -s;
  };
  const auto grad = [](const std::vector<double>& z) {
    std::vector<double> g(z.size());
    for (size_t j = 0; j < z.size(); ++j) g[j] = -2 * (z[j] - 0.2);
    return g;
  };

  GaConfig gc;
  gc.population = 50;
  gc.iterations = 100;
  gc.seed = 9001;
  const GaResult ga = run_ga(
      [&](const double* Z, size_t n, double* out) {
        std::vector<double> z(dim);
        for (size_t i = 0; i < n; ++i) {
          std::copy(Z + i * dim, Z + (i + 1) * dim, z.begin());
          out[i] = value(z);
        }
      },
      dim, gc);

  GdConfig dc;
  dc.kind = OptKind::adam;
  dc.lr = 0.001;
  dc.iterations = 400;
  dc.z0 = std::vector<double>(dim, 0.0);
  const GdResult gd = run_gd(value, grad, dim, dc);

  const double dt = secs(t0);
  const bool ok = ga.best_fitness > -1e-2 && gd.best_fitness > -1e-2 && dt < 60;
  std::printf("[%s] 03 convex oracle recovered by both searches "
              "(genetic %.2e, adam %.2e, %.1fs)\n",
              ok ? "PASS" : "FAIL", ga.best_fitness, gd.best_fitness, dt);
  return ok;
}

// ---------------------------------------------------------------------------
// 4. The central claim: genetic search beats every gradient baseline on
//    average feature MSE, for most master seeds, within the time budget.

bool check_ga_beats_baselines() {
  std::vector<double> times;
  const auto& results = ctx.benchmarks(&times);
  size_t wins = 0;
  bool all_ok_cells = true, in_time = true;
  for (size_t s = 0; s < results.size(); ++s) {
    const auto& sums = results[s].summaries;
    all_ok_cells = all_ok_cells && results[s].all_ok;
    double ga_mse = 0, best_gd = 1e300;
    bool win = true;
    for (const auto& p : sums) {
      if (p.name == "ga")
        ga_mse = p.average_mse;
    }
    for (const auto& p : sums) {
      if (p.name != "ga") {
        best_gd = std::min(best_gd, p.average_mse);
        if (!(ga_mse < p.average_mse)) win = false;
      }
    }
    if (win) ++wins;
    if (times[s] >= 600.0) in_time = false;
    progress("  [bench] seed %llu: genetic %.2e vs best gradient %.2e -> %s\n",
             (unsigned long long)kMasterSeeds[s], ga_mse, best_gd,
             win ? "win" : "loss");
  }
  const bool ok = wins >= 4 && all_ok_cells && in_time;
  std::printf("[%s] 04 genetic search beats every gradient baseline on "
              "average MSE (%zu/%zu seeds, all cells %s, per-seed time %s)\n",
              ok ? "PASS" : "FAIL", wins, results.size(),
              all_ok_cells ? "ok" : "errored", in_time ? "<10min" : ">=10min");
  return ok;
}

// ---------------------------------------------------------------------------
// 5. Genre preservation: the frozen classifier is well above chance on
//    held-out covers, and genetic search keeps genre at least as well as
//    every gradient baseline for most master seeds.

bool check_genre_preserved() {
  const DenseNet& clf = ctx.classifier();
  std::vector<Image> covers;
  std::vector<int> genres;
  for (const auto& ex : ctx.test()) {
    covers.push_back(ex.cover);
    genres.push_back(ex.genre);
  }
  const double heldout = genre_accuracy(clf, covers, genres);

  const auto& results = ctx.benchmarks(nullptr);
  size_t wins = 0;
  for (size_t s = 0; s < results.size(); ++s) {
    double ga_acc = 0;
    bool win = true;
    for (const auto& p : results[s].summaries)
      if (p.name == "ga") ga_acc = p.genre_accuracy;
    for (const auto& p : results[s].summaries)
      if (p.name != "ga" && ga_acc < p.genre_accuracy) win = false;
    if (win) ++wins;
    progress("  [genre] seed %llu: genetic accuracy %.3f -> %s\n",
             (unsigned long long)kMasterSeeds[s], ga_acc, win ? "win" : "loss");
  }
  const bool ok = heldout > 0.40 && wins >= 4;
  std::printf("[%s] 05 genre survives optimization (held-out classifier "
              "accuracy %.3f, genetic >= every baseline in %zu/%zu seeds)\n",
              ok ? "PASS" : "FAIL", heldout, wins, results.size());
  return ok;
}

// ---------------------------------------------------------------------------
// 6. Adversarial ablation: with the discriminator term on, the predicted
//    feature distribution on held-out covers should sit closer (in Frechet
//    distance) to the true one than without it.

bool check_adversarial_helps() {
  const auto& r9 = ctx.fit9();
  const auto& r0 = ctx.fit0();
  const auto& data = ctx.train();

  const auto dist = [&](const FitnessTrainResult& r) {
    std::vector<std::vector<double>> pred, truth;
    for (const size_t i : r.val_idx) {
      pred.push_back(predict_features(r.predictor, data[i].cover));
      truth.push_back(data[i].features);
    }
    return frechet_distance(summarize(pred), summarize(truth));
  };
  const double d9 = dist(r9);
  const double d0 = dist(r0);
  const bool same_split = r9.val_idx == r0.val_idx;
  const bool ok = same_split && d9 < d0;
  std::printf("[%s] 06 adversarial term tightens the validation feature "
              "distribution (frechet %.5f with vs %.5f without)\n",
              ok ? "PASS" : "FAIL", d9, d0);
  return ok;
}

// ---------------------------------------------------------------------------
// 7. Distribution-metric self-consistency.

bool check_frechet_consistency() {
  bool ok = true;
  Rng rng(424242);

  // A random summary with a guaranteed-SPD covariance.
  const auto random_summary = [&rng](size_t d) {
    GaussianSummary g;
    g.dim = d;
    g.mean.resize(d);
    for (auto& v : g.mean) v = rng.normal();
    std::vector<double> A(d * d);
    for (auto& v : A) v = rng.normal() * 0.5;
    g.cov.assign(d * d, 0.0);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        double s = 0;
        for (size_t k = 0; k < d; ++k) s += A[i * d + k] * A[j * d + k];
        g.cov[i * d + j] = s + (i == j ? 0.05 : 0.0);
      }
    return g;
  };

  // Identical distributions -> zero.
  double worst_zero = 0;
  for (size_t d = 2; d <= 9; ++d) {
    const GaussianSummary g = random_summary(d);
    worst_zero = std::max(worst_zero, std::abs(frechet_distance(g, g)));
  }
  ok = ok && worst_zero < 1e-9;

  // One-dimensional closed form: (m1-m2)^2 + s1 + s2 - 2 sqrt(s1 s2).
  double worst_1d = 0;
  for (int i = 0; i < 20; ++i) {
    GaussianSummary a, b;
    a.dim = b.dim = 1;
    a.mean = {rng.normal()};
    b.mean = {rng.normal()};
    a.cov = {0.1 + rng.uniform01()};
    b.cov = {0.1 + rng.uniform01()};
    const double closed = (a.mean[0] - b.mean[0]) * (a.mean[0] - b.mean[0]) +
                          a.cov[0] + b.cov[0] -
                          2 * std::sqrt(a.cov[0] * b.cov[0]);
    worst_1d = std::max(worst_1d,
                        std::abs(frechet_distance(a, b) - closed));
  }
  ok = ok && worst_1d < 1e-12;

  // Agreement with the independent product-form evaluation, and symmetry.
  double worst_alt = 0, worst_sym = 0;
  for (int c = 0; c < 100; ++c) {
    const size_t d = 2 + c % 8;
    const GaussianSummary a = random_summary(d);
    const GaussianSummary b = random_summary(d);
    const double fwd = frechet_distance(a, b);
    const double alt = frechet_distance_product_form(a, b);
    const double rev = frechet_distance(b, a);
    worst_alt = std::max(worst_alt, std::abs(fwd - alt));
    worst_sym = std::max(worst_sym, std::abs(fwd - rev));
  }
  ok = ok && worst_alt < 1e-8 && worst_sym < 1e-9;

  std::printf("[%s] 07 distribution metric is self-consistent (zero %.1e, "
              "1-dim %.1e, product form %.1e, symmetry %.1e)\n",
              ok ? "PASS" : "FAIL", worst_zero, worst_1d, worst_alt,
              worst_sym);
  return ok;
}

// ---------------------------------------------------------------------------
// 8. Feature sweep: optimizing along an 11-point grid of one feature should
//    produce predicted values that rank with the grid.

bool check_feature_sweep() {
  const DenseNet& gen = ctx.generator();
  const DenseNet& pred = ctx.fit9().predictor;
  const std::vector<double> base = ctx.world().feature_mean;

  size_t dim = 0;
  for (size_t i = 0; i < kNumFeatures; ++i)
    if (std::strcmp(kFeatureNames[i], "energy") == 0) dim = i;

  size_t positive = 0;
  for (const uint64_t master : kMasterSeeds) {
    SweepConfig sc;
    sc.steps = 11;
    sc.ga.population = 80;
    sc.ga.iterations = 80;
    sc.master_seed = derive_seed(master, hash_tag("sweep"));
    const auto t0 = Clock::now();
    const auto steps = feature_sweep(gen, pred, base, dim, sc);
    std::vector<double> grid, got;
    for (const auto& s : steps) {
      grid.push_back(s.value);
      got.push_back(s.predicted[dim]);
    }
    const double rho = spearman(grid, got);
    if (rho > 0) ++positive;
    progress("  [sweep] seed %llu: spearman %.3f (%.0fs)\n",
             (unsigned long long)master, rho, secs(t0));
  }
  const bool ok = positive >= 4;
  std::printf("[%s] 08 swept feature tracks its grid "
              "(positive rank correlation in %zu/%zu seeds)\n",
              ok ? "PASS" : "FAIL", positive, kMasterSeeds.size());
  return ok;
}

// ---------------------------------------------------------------------------
// 9. Rerunning the benchmark command with identical inputs must reproduce
//    identical result tables and identical cover pixels.

std::string read_bytes(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> sorted_names(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir))
    names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

bool check_cli_rerun_identical() {
  const fs::path root = fs::temp_directory_path() / "coverart_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root);

  // Materialize the shared inputs once.
  write_manifest((root / "test").string(), "manifest.csv", ctx.test());
  const std::string pred_path = (root / "predictor.caw").string();
  const std::string clf_path = (root / "classifier.caw").string();
  save_net(ctx.fit9().predictor, pred_path);
  save_net(ctx.classifier(), clf_path);

  RunConfig cfg;
  cfg.seed = 7;
  cfg.world_seed = kWorldSeed;
  cfg.latent_dim = kLatentDim;
  cfg.image_size = kImageSize;
  cfg.predictor = pred_path;
  cfg.classifier = clf_path;
  cfg.test_manifest = (root / "test" / "manifest.csv").string();
  cfg.targets_per_genre = 1;
  cfg.population = 30;
  cfg.ga_iterations = 8;
  cfg.gd_iterations = 10;

  cfg.out = (root / "run_a").string();
  cmd_benchmark(cfg);
  cfg.out = (root / "run_b").string();
  cmd_benchmark(cfg);

  bool ok = true;
  std::string why;
  for (const char* name : {"optimizer_mse.csv", "genre_accuracy.csv"}) {
    if (read_bytes(root / "run_a" / name) != read_bytes(root / "run_b" / name)) {
      ok = false;
      why = std::string(name) + " differs";
    }
  }
  const auto names_a = sorted_names(root / "run_a" / "covers");
  const auto names_b = sorted_names(root / "run_b" / "covers");
  if (names_a != names_b || names_a.empty()) {
    ok = false;
    why = "cover sets differ";
  } else {
    for (const auto& n : names_a) {
      const Image a = read_image((root / "run_a" / "covers" / n).string());
      const Image b = read_image((root / "run_b" / "covers" / n).string());
      if (a.size != b.size || a.data != b.data) {
        ok = false;
        why = "cover pixels differ: " + n;
      }
    }
  }
  std::printf("[%s] 09 benchmark rerun reproduces identical tables and "
              "cover pixels (%zu covers)%s%s\n",
              ok ? "PASS" : "FAIL", names_a.size(), ok ? "" : ": ",
              ok ? "" : why.c_str());
  return ok;
}

// ---------------------------------------------------------------------------
// 10. Serialization round trips: manifest features to 1e-9, weights bitwise.

bool check_round_trips() {
  bool ok = true;
  std::string why;
  const fs::path root = fs::temp_directory_path() / "coverart_acceptance_rt";
  fs::remove_all(root);

  // Manifest: write ten covers, read them back.
  std::vector<CoverExample> subset(ctx.train().begin(),
                                   ctx.train().begin() + 10);
  write_manifest((root / "data").string(), "manifest.csv", subset);
  const auto back = load_manifest((root / "data" / "manifest.csv").string());
  if (back.size() != subset.size()) {
    ok = false;
    why = "manifest row count";
  } else {
    for (size_t i = 0; i < subset.size(); ++i) {
      if (back[i].genre != subset[i].genre || back[i].id != subset[i].id) {
        ok = false;
        why = "manifest label";
      }
      for (size_t j = 0; j < kNumFeatures; ++j)
        if (std::abs(back[i].features[j] - subset[i].features[j]) >= 1e-9) {
          ok = false;
          why = "manifest feature precision";
        }
      for (size_t p = 0; p < subset[i].cover.data.size(); ++p)
        if (std::abs(back[i].cover.data[p] - subset[i].cover.data[p]) >
            0.5 / 255.0 + 1e-12) {
          ok = false;
          why = "cover quantization";
        }
    }
  }

  // Weights: bitwise identity for a deep net and the one-layer discriminator,
  // including the forward outputs of the reloaded net.
  for (const DenseNet* net :
       {&ctx.fit9().predictor, &ctx.fit9().discriminator}) {
    const std::string path = (root / "net.caw").string();
    save_net(*net, path, {{"note", "round-trip"}, {"value", 1.25}});
    const LoadedNet loaded = load_net(path);
    if (loaded.metadata.value("value", 0.0) != 1.25) {
      ok = false;
      why = "metadata";
    }
    if (loaded.net.layers.size() != net->layers.size() ||
        loaded.net.frozen != net->frozen) {
      ok = false;
      why = "weights structure";
    } else {
      for (size_t li = 0; li < net->layers.size(); ++li) {
        if (loaded.net.layers[li].W != net->layers[li].W ||
            loaded.net.layers[li].b != net->layers[li].b ||
            loaded.net.layers[li].act != net->layers[li].act) {
          ok = false;
          why = "weights bits";
        }
      }
      Rng in_rng(55);
      std::vector<double> x(net->input_dim());
      for (auto& v : x) v = in_rng.uniform01();
      if (net->forward(x) != loaded.net.forward(x)) {
        ok = false;
        why = "forward outputs";
      }
    }
  }

  std::printf("[%s] 10 manifests and weight files round-trip "
              "(features to 1e-9, parameters and forward outputs bitwise)%s%s\n",
              ok ? "PASS" : "FAIL", ok ? "" : ": ", ok ? "" : why.c_str());
  return ok;
}

// ---------------------------------------------------------------------------

struct Check {
  int id;
  const char* name;
  bool (*fn)();
};

const Check kChecks[] = {
    {1, "latent gradient matches central differences", check_gradient},
    {2, "genetic-search invariants and thread independence", check_ga_invariants},
    {3, "convex oracle recovered by both searches", check_convex_oracle},
    {4, "genetic search beats every gradient baseline", check_ga_beats_baselines},
    {5, "genre survives optimization", check_genre_preserved},
    {6, "adversarial term tightens the feature distribution", check_adversarial_helps},
    {7, "distribution metric self-consistency", check_frechet_consistency},
    {8, "swept feature tracks its grid", check_feature_sweep},
    {9, "benchmark rerun is bit-identical", check_cli_rerun_identical},
    {10, "serialization round trips", check_round_trips},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--list") {
      for (const Check& c : kChecks)
        std::printf("%2d  %s\n", c.id, c.name);
      return 0;
    }
    if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.push_back(std::stoi(tok));
    }
  }

  const auto t0 = Clock::now();
  int failures = 0, ran = 0;
  for (const Check& c : kChecks) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), c.id) == only.end())
      continue;
    ++ran;
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      std::printf("[FAIL] %02d %s (exception: %s)\n", c.id, c.name, e.what());
    }
    if (!ok) ++failures;
    std::fflush(stdout);
  }
  std::printf("%d/%d checks passed in %.0fs\n", ran - failures, ran, secs(t0));
  return failures;
}
