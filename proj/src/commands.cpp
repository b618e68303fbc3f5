#include "coverart/commands.h"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coverart/album.h"
#include "coverart/benchmark.h"
#include "coverart/classifier.h"
#include "coverart/csv.h"
#include "coverart/dataset.h"
#include "coverart/fitness.h"
#include "coverart/gd.h"
#include "coverart/generator.h"
#include "coverart/sweep.h"
#include "coverart/weights_io.h"
#include "coverart/world.h"

namespace fs = std::filesystem;

namespace coverart {

nlohmann::json config_to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"world_seed", c.world_seed},
          {"out", c.out},
          {"threads", c.threads},
          {"latent_dim", c.latent_dim},
          {"image_size", c.image_size},
          {"n_per_genre", c.n_per_genre},
          {"test_per_genre", c.test_per_genre},
          {"manifest", c.manifest},
          {"lambda", c.lambda},
          {"epochs", c.epochs},
          {"lr", c.lr},
          {"batch", c.batch},
          {"predictor", c.predictor},
          {"classifier", c.classifier},
          {"method", c.method},
          {"target", c.target},
          {"row", c.row},
          {"genre", c.genre},
          {"gd_lr", c.gd_lr},
          {"gd_iterations", c.gd_iterations},
          {"population", c.population},
          {"mutation_rate", c.mutation_rate},
          {"selection_rate", c.selection_rate},
          {"sigma", c.sigma},
          {"ga_iterations", c.ga_iterations},
          {"test_manifest", c.test_manifest},
          {"targets_per_genre", c.targets_per_genre},
          {"equal_evals", c.equal_evals},
          {"sweep_feature", c.sweep_feature},
          {"sweep_steps", c.sweep_steps},
          {"sweep_base", c.sweep_base},
          {"tracks", c.tracks}};
}

void apply_config_json(RunConfig& c, const nlohmann::json& j) {
  c.seed = j.value("seed", c.seed);
  c.world_seed = j.value("world_seed", c.world_seed);
  c.out = j.value("out", c.out);
  c.threads = j.value("threads", c.threads);
  c.latent_dim = j.value("latent_dim", c.latent_dim);
  c.image_size = j.value("image_size", c.image_size);
  c.n_per_genre = j.value("n_per_genre", c.n_per_genre);
  c.test_per_genre = j.value("test_per_genre", c.test_per_genre);
  c.manifest = j.value("manifest", c.manifest);
  c.lambda = j.value("lambda", c.lambda);
  c.epochs = j.value("epochs", c.epochs);
  c.lr = j.value("lr", c.lr);
  c.batch = j.value("batch", c.batch);
  c.predictor = j.value("predictor", c.predictor);
  c.classifier = j.value("classifier", c.classifier);
  c.method = j.value("method", c.method);
  c.target = j.value("target", c.target);
  c.row = j.value("row", c.row);
  c.genre = j.value("genre", c.genre);
  c.gd_lr = j.value("gd_lr", c.gd_lr);
  c.gd_iterations = j.value("gd_iterations", c.gd_iterations);
  c.population = j.value("population", c.population);
  c.mutation_rate = j.value("mutation_rate", c.mutation_rate);
  c.selection_rate = j.value("selection_rate", c.selection_rate);
  c.sigma = j.value("sigma", c.sigma);
  c.ga_iterations = j.value("ga_iterations", c.ga_iterations);
  c.test_manifest = j.value("test_manifest", c.test_manifest);
  c.targets_per_genre = j.value("targets_per_genre", c.targets_per_genre);
  c.equal_evals = j.value("equal_evals", c.equal_evals);
  c.sweep_feature = j.value("sweep_feature", c.sweep_feature);
  c.sweep_steps = j.value("sweep_steps", c.sweep_steps);
  c.sweep_base = j.value("sweep_base", c.sweep_base);
  c.tracks = j.value("tracks", c.tracks);
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  f >> j;
  apply_config_json(base, j);
  return base;
}

static void apply_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
}

static std::string resolve_out(const RunConfig& cfg,
                               const std::string& subcommand) {
  std::string out = cfg.out;
  if (out.empty()) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto s = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    out = "run_" + std::to_string(s) + "_" + subcommand + "_" +
          std::to_string(cfg.seed);
  }
  fs::create_directories(out);
  return out;
}

static void write_resolved_config(const RunConfig& cfg,
                                  const std::string& subcommand,
                                  const std::string& out) {
  nlohmann::json j = config_to_json(cfg);
  j["subcommand"] = subcommand;
  std::ofstream f(fs::path(out) / "resolved_config.json");
  f << j.dump(2) << "\n";
}

static std::string feature_name_list() {
  std::string s;
  for (size_t i = 0; i < kNumFeatures; ++i) {
    if (i) s += ", ";
    s += kFeatureNames[i];
  }
  return s;
}

// Nine comma-separated raw-unit values -> normalized [0,1] features.
static std::vector<double> parse_target(const std::string& csv) {
  std::vector<double> raw;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) raw.push_back(parse_double(cell));
  if (raw.size() != kNumFeatures)
    throw std::runtime_error("expected 9 feature values (" +
                             feature_name_list() + "), got " +
                             std::to_string(raw.size()));
  std::vector<double> f(kNumFeatures);
  for (size_t i = 0; i < kNumFeatures; ++i)
    f[i] = feature_from_raw(i, raw[i]);
  return f;
}

static std::vector<double> target_from_manifest_row(const std::string& path,
                                                    int row) {
  const CsvTable t = read_csv(path);
  if (row < 0 || static_cast<size_t>(row) >= t.rows.size())
    throw std::runtime_error("row " + std::to_string(row) +
                             " out of range for " + path);
  std::vector<double> f(kNumFeatures);
  for (size_t i = 0; i < kNumFeatures; ++i)
    f[i] = feature_from_raw(
        i, parse_double(t.rows[row][t.col(kFeatureNames[i])]));
  return f;
}

static DenseNet load_predictor_checked(const RunConfig& cfg) {
  if (cfg.predictor.empty() || !fs::exists(cfg.predictor))
    throw std::runtime_error(
        "predictor weights not found at '" + cfg.predictor +
        "'; train them first: coverart train-fitness --manifest <train "
        "manifest> --out <dir>  (expects <dir>/predictor.caw)");
  DenseNet net = load_net(cfg.predictor).net;
  if (net.input_dim() != 3 * cfg.image_size * cfg.image_size)
    throw std::runtime_error("predictor expects image size != --image-size");
  return net;
}

static DenseNet make_generator(const RunConfig& cfg, bool conditional) {
  GeneratorConfig gc;
  gc.seed = derive_seed(cfg.world_seed,
                        hash_tag(conditional ? "conditional-decoder" : "decoder"));
  gc.latent_dim = cfg.latent_dim;
  gc.image_size = cfg.image_size;
  gc.conditional = conditional;
  return build_generator(gc);
}

static int parse_genre_flag(const std::string& genre) {
  if (genre.empty()) return -1;
  const int g = genre_index(genre);
  if (g < 0) {
    std::string names;
    for (size_t i = 0; i < kNumGenres; ++i) {
      if (i) names += ", ";
      names += kGenreNames[i];
    }
    throw std::runtime_error("unknown genre '" + genre + "' (one of: " + names + ")");
  }
  return g;
}

static GaConfig ga_config_of(const RunConfig& cfg) {
  GaConfig g;
  g.population = cfg.population;
  g.mutation_rate = cfg.mutation_rate;
  g.selection_rate = cfg.selection_rate;
  g.sigma = cfg.sigma;
  g.iterations = cfg.ga_iterations;
  return g;
}

int cmd_synth_data(const RunConfig& cfg) {
  apply_threads(cfg);
  const std::string out = resolve_out(cfg, "synth-data");
  WorldConfig wc;
  wc.seed = cfg.world_seed;
  wc.latent_dim = cfg.latent_dim;
  wc.image_size = cfg.image_size;
  std::fprintf(stderr, "building world (seed %llu)...\n",
               static_cast<unsigned long long>(cfg.world_seed));
  const SyntheticWorld world = build_world(wc);
  std::fprintf(stderr, "world margin %.6f\n", world.margin);

  Rng rng = Rng(cfg.seed).stream("dataset");
  std::fprintf(stderr, "sampling %zu covers per genre (train)...\n",
               cfg.n_per_genre);
  const auto train = sample_examples(world, cfg.n_per_genre, rng);
  write_manifest((fs::path(out) / "train").string(), "manifest.csv", train);
  std::fprintf(stderr, "train: %zu covers\n", train.size());

  if (cfg.test_per_genre > 0) {
    std::fprintf(stderr, "sampling %zu covers per genre (test)...\n",
                 cfg.test_per_genre);
    const auto test = sample_examples(world, cfg.test_per_genre, rng);
    write_manifest((fs::path(out) / "test").string(), "manifest.csv", test);
    std::fprintf(stderr, "test: %zu covers\n", test.size());
  }
  write_resolved_config(cfg, "synth-data", out);
  return 0;
}

int cmd_train_fitness(const RunConfig& cfg) {
  apply_threads(cfg);
  if (cfg.manifest.empty())
    throw std::runtime_error("train-fitness needs --manifest");
  const std::string out = resolve_out(cfg, "train-fitness");
  const auto data = load_manifest(cfg.manifest);
  std::fprintf(stderr, "loaded %zu covers from %s\n", data.size(),
               cfg.manifest.c_str());

  FitnessTrainConfig tc;
  tc.lambda = cfg.lambda;
  tc.epochs = cfg.epochs;
  tc.lr = cfg.lr;
  tc.batch = cfg.batch;
  tc.seed = cfg.seed;
  if (tc.epochs == 0)
    std::fprintf(stderr, "warning: epochs=0, weights stay at initialization\n");
  const FitnessTrainResult res = train_fitness(data, tc);

  nlohmann::json meta = {{"epochs", cfg.epochs},
                         {"lambda", cfg.lambda},
                         {"seed", cfg.seed},
                         {"initial_val_mse", res.initial_val_mse},
                         {"final_val_mse", res.final_val_mse}};
  save_net(res.predictor, (fs::path(out) / "predictor.caw").string(), meta);
  save_net(res.discriminator,
           (fs::path(out) / "discriminator.caw").string(), meta);
  write_train_log((fs::path(out) / "train_log.csv").string(), res.log);
  write_resolved_config(cfg, "train-fitness", out);
  std::fprintf(stderr, "final validation MSE: %.6g (initial %.6g)\n",
               res.final_val_mse, res.initial_val_mse);
  return 0;
}

int cmd_optimize(const RunConfig& cfg) {
  apply_threads(cfg);
  const std::string out = resolve_out(cfg, "optimize");
  const int genre = parse_genre_flag(cfg.genre);
  const DenseNet pred = load_predictor_checked(cfg);
  const DenseNet gen = make_generator(cfg, genre >= 0);

  std::vector<double> target;
  if (!cfg.target.empty())
    target = parse_target(cfg.target);
  else if (cfg.row >= 0 && !cfg.manifest.empty())
    target = target_from_manifest_row(cfg.manifest, cfg.row);
  else
    throw std::runtime_error(
        "optimize needs --target v1,...,v9 or --manifest with --row");

  FitnessContext ctx;
  ctx.pred = &pred;
  ctx.gen = &gen;
  ctx.latent_dim = cfg.latent_dim;
  ctx.image_size = cfg.image_size;
  ctx.genre = genre;
  ctx.target = target;

  std::vector<double> best_z;
  double best_fitness = 0.0;
  std::vector<TraceRow> trace;
  if (cfg.method == "ga") {
    GaConfig gc = ga_config_of(cfg);
    gc.seed = derive_seed(cfg.seed, hash_tag("optimize"));
    const GaResult r = run_ga(
        [&](const double* Z, size_t n, double* s) {
          fitness_batch(ctx, Z, n, s, true);
        },
        cfg.latent_dim, gc);
    best_z = r.best_z;
    best_fitness = r.best_fitness;
    trace = r.trace;
  } else if (cfg.method == "adam" || cfg.method == "rmsprop") {
    GdConfig gc;
    gc.kind = opt_from_name(cfg.method);
    gc.lr = cfg.gd_lr;
    gc.iterations = cfg.gd_iterations;
    gc.seed = derive_seed(cfg.seed, hash_tag("optimize"));
    const GdResult r = run_gd(
        [&](const std::vector<double>& z) { return fitness_value(ctx, z); },
        [&](const std::vector<double>& z) { return fitness_gradient(ctx, z); },
        cfg.latent_dim, gc);
    best_z = r.best_z;
    best_fitness = r.best_fitness;
    trace = r.trace;
  } else {
    throw std::runtime_error("unknown method '" + cfg.method +
                             "' (ga, adam, rmsprop)");
  }

  const Image cover = render(gen, best_z, cfg.image_size, genre);
  const std::string img_path =
      write_image_auto(cover, (fs::path(out) / "best").string());
  write_trace_csv((fs::path(out) / "trace.csv").string(), trace);
  write_resolved_config(cfg, "optimize", out);
  const double mse = feature_mse(predict_features(pred, cover), target);
  std::fprintf(stderr, "best fitness %.6g, feature MSE %.6g\n", best_fitness,
               mse);
  std::fprintf(stderr, "wrote %s\n", img_path.c_str());
  return 0;
}

int cmd_benchmark(const RunConfig& cfg) {
  apply_threads(cfg);
  if (cfg.test_manifest.empty())
    throw std::runtime_error("benchmark needs --test-manifest");
  const std::string out = resolve_out(cfg, "benchmark");
  const DenseNet pred = load_predictor_checked(cfg);
  const DenseNet gen = make_generator(cfg, false);
  const auto test_examples = load_manifest(cfg.test_manifest);

  DenseNet clf;
  if (!cfg.classifier.empty() && fs::exists(cfg.classifier)) {
    clf = load_net(cfg.classifier).net;
  } else {
    if (cfg.manifest.empty())
      throw std::runtime_error(
          "benchmark needs --classifier weights or --manifest to train one");
    std::fprintf(stderr, "training genre classifier...\n");
    const auto train_examples = load_manifest(cfg.manifest);
    ClassifierTrainConfig cc;
    cc.seed = derive_seed(cfg.seed, hash_tag("classifier"));
    clf = train_genre_classifier(train_examples, cc);
    save_net(clf, (fs::path(out) / "classifier.caw").string(),
             {{"seed", cc.seed}, {"epochs", cc.epochs}});
  }

  BenchmarkConfig bc;
  bc.master_seed = cfg.seed;
  bc.targets_per_genre = cfg.targets_per_genre;
  bc.ga = ga_config_of(cfg);
  bc.gd_iterations = cfg.gd_iterations;
  bc.equal_evals = cfg.equal_evals;

  std::fprintf(stderr, "benchmarking %zu procedures x %zu targets...\n",
               default_roster().size(),
               bc.targets_per_genre * kNumGenres);
  const BenchmarkResult res = run_benchmark(gen, pred, clf, test_examples, bc);

  write_mse_table((fs::path(out) / "optimizer_mse.csv").string(), res);
  write_genre_table((fs::path(out) / "genre_accuracy.csv").string(), res);
  fs::create_directories(fs::path(out) / "covers");
  for (const auto& c : res.cells) {
    if (!c.ok) continue;
    write_image_auto(c.cover, (fs::path(out) / "covers" /
                               (c.procedure + "_" + c.target_id))
                                  .string());
  }
  write_resolved_config(cfg, "benchmark", out);
  for (const auto& s : res.summaries)
    std::fprintf(stderr, "%-14s avg MSE %.6g  genre acc %.3f\n",
                 s.name.c_str(), s.average_mse, s.genre_accuracy);
  return res.all_ok ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
  apply_threads(cfg);
  const std::string out = resolve_out(cfg, "sweep");
  const int genre = parse_genre_flag(cfg.genre);
  const DenseNet pred = load_predictor_checked(cfg);
  const DenseNet gen = make_generator(cfg, genre >= 0);

  int dim = -1;
  for (size_t i = 0; i < kNumFeatures; ++i)
    if (cfg.sweep_feature == kFeatureNames[i]) dim = static_cast<int>(i);
  if (dim < 0)
    throw std::runtime_error("unknown feature '" + cfg.sweep_feature +
                             "' (one of: " + feature_name_list() + ")");

  std::vector<double> base;
  if (cfg.sweep_base == "mean") {
    WorldConfig wc;
    wc.seed = cfg.world_seed;
    wc.latent_dim = cfg.latent_dim;
    wc.image_size = cfg.image_size;
    base = build_world(wc).feature_mean;
  } else {
    base = parse_target(cfg.sweep_base);
  }

  SweepConfig sc;
  sc.steps = cfg.sweep_steps;
  sc.ga = ga_config_of(cfg);
  sc.master_seed = derive_seed(cfg.seed, hash_tag("sweep"));
  sc.genre = genre;
  std::fprintf(stderr, "sweeping %s over %zu steps...\n",
               cfg.sweep_feature.c_str(), sc.steps);
  const auto steps = feature_sweep(gen, pred, base, dim, sc);

  write_sweep_csv((fs::path(out) / "sweep.csv").string(), dim, steps);
  std::vector<Image> imgs;
  for (size_t s = 0; s < steps.size(); ++s) {
    char name[32];
    std::snprintf(name, sizeof(name), "step_%02zu", s);
    write_image_auto(steps[s].cover, (fs::path(out) / name).string());
    imgs.push_back(steps[s].cover);
  }
  write_image_auto(montage(imgs, imgs.size()),
                   (fs::path(out) / "montage").string());
  write_resolved_config(cfg, "sweep", out);
  std::fprintf(stderr, "wrote %zu step covers\n", steps.size());
  return 0;
}

int cmd_album(const RunConfig& cfg) {
  apply_threads(cfg);
  if (cfg.tracks.empty()) throw std::runtime_error("album needs --tracks CSV");
  const std::string out = resolve_out(cfg, "album");
  const int genre = parse_genre_flag(cfg.genre);
  const DenseNet pred = load_predictor_checked(cfg);
  const DenseNet gen = make_generator(cfg, genre >= 0);

  const CsvTable t = read_csv(cfg.tracks);
  std::vector<std::vector<double>> tracks;
  for (const auto& r : t.rows) {
    std::vector<double> f(kNumFeatures);
    for (size_t i = 0; i < kNumFeatures; ++i)
      f[i] = feature_from_raw(i, parse_double(r[t.col(kFeatureNames[i])]));
    tracks.push_back(std::move(f));
  }
  if (tracks.empty()) throw std::runtime_error("album: no tracks in " + cfg.tracks);

  std::fprintf(stderr, "optimizing %zu track covers...\n", tracks.size());
  const AlbumResult res =
      album_batch(gen, pred, tracks, genre, ga_config_of(cfg),
                  derive_seed(cfg.seed, hash_tag("album")));

  std::vector<std::string> header = {"track", "fitness"};
  for (size_t i = 0; i < kNumFeatures; ++i)
    header.push_back(std::string("predicted_") + kFeatureNames[i]);
  CsvWriter csv((fs::path(out) / "album.csv").string(), header);
  for (size_t i = 0; i < res.covers.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "track_%02zu", i);
    write_image_auto(res.covers[i], (fs::path(out) / name).string());
    std::vector<std::string> cells = {CsvWriter::num(i),
                                      CsvWriter::num(res.fitness[i])};
    for (size_t j = 0; j < kNumFeatures; ++j)
      cells.push_back(CsvWriter::num(res.predicted[i][j]));
    csv.row(cells);
  }
  write_image_auto(montage(res.covers, std::min<size_t>(res.covers.size(), 7)),
                   (fs::path(out) / "montage").string());
  write_resolved_config(cfg, "album", out);
  std::fprintf(stderr, "wrote %zu covers\n", res.covers.size());
  return 0;
}

}  // namespace coverart
