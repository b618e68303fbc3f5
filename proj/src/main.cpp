#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "coverart/commands.h"

using coverart::RunConfig;

namespace {

// Common flags shared by every subcommand.
void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "master seed");
  sub->add_option("--out", cfg.out, "output directory (default: run_<time>_<cmd>_<seed>)");
  sub->add_option("--threads", cfg.threads, "worker thread cap (0 = all cores)");
  sub->add_option("--latent-dim", cfg.latent_dim, "latent dimension");
  sub->add_option("--image-size", cfg.image_size, "square cover size in pixels");
  sub->add_option("--world-seed", cfg.world_seed,
                  "seed of the synthetic world / generator");
  // --config is handled in a pre-pass; registered here so it appears in help
  std::string dummy;
  sub->add_option("--config", dummy, "JSON config file (flags override it)");
}

void add_ga_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--population", cfg.population, "GA population size");
  sub->add_option("--mutation-rate", cfg.mutation_rate, "GA mutation fraction");
  sub->add_option("--selection-rate", cfg.selection_rate, "GA survivor fraction");
  sub->add_option("--sigma", cfg.sigma, "GA mutation noise std");
  sub->add_option("--ga-iterations", cfg.ga_iterations, "GA generations");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  // Pre-pass: resolve --config before binding flags, so that explicitly
  // given flags override file values which override defaults.
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    try {
      if (a == "--config" && i + 1 < argc)
        cfg = coverart::load_config_file(argv[i + 1], cfg);
      else if (a.rfind("--config=", 0) == 0)
        cfg = coverart::load_config_file(a.substr(9), cfg);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
  }

  CLI::App app{"Album-cover synthesis by latent-space optimization"};
  app.require_subcommand(1);

  CLI::App* synth = app.add_subcommand(
      "synth-data", "Sample a synthetic cover/feature dataset");
  add_common(synth, cfg);
  synth->add_option("--n-per-genre", cfg.n_per_genre, "train covers per genre");
  synth->add_option("--test-per-genre", cfg.test_per_genre,
                    "held-out covers per genre (0 to skip)");

  CLI::App* train = app.add_subcommand(
      "train-fitness", "Train the feature predictor and discriminator");
  add_common(train, cfg);
  train->add_option("--manifest", cfg.manifest, "training manifest CSV");
  train->add_option("--lambda", cfg.lambda, "adversarial weight");
  train->add_option("--epochs", cfg.epochs, "training epochs");
  train->add_option("--lr", cfg.lr, "learning rate");
  train->add_option("--batch", cfg.batch, "batch size");

  CLI::App* opt = app.add_subcommand(
      "optimize", "Search the latent space for one target's cover");
  add_common(opt, cfg);
  add_ga_flags(opt, cfg);
  opt->add_option("--predictor", cfg.predictor, "predictor weights (.caw)");
  opt->add_option("--method", cfg.method, "ga | adam | rmsprop");
  opt->add_option(
      "--target", cfg.target,
      "raw-unit feature values: danceability,valence,energy,tempo,loudness,"
      "speechiness,instrumentalness,liveness,acousticness");
  opt->add_option("--manifest", cfg.manifest, "manifest to take a target from");
  opt->add_option("--row", cfg.row, "row index into --manifest");
  opt->add_option("--genre", cfg.genre, "genre name for conditional generation");
  opt->add_option("--lr", cfg.gd_lr, "gradient-descent learning rate");
  opt->add_option("--gd-iterations", cfg.gd_iterations, "gradient-descent steps");

  CLI::App* bench = app.add_subcommand(
      "benchmark", "Run all five procedures over held-out test targets");
  add_common(bench, cfg);
  add_ga_flags(bench, cfg);
  bench->add_option("--predictor", cfg.predictor, "predictor weights (.caw)");
  bench->add_option("--classifier", cfg.classifier,
                    "classifier weights (.caw); trained from --manifest if absent");
  bench->add_option("--manifest", cfg.manifest, "train manifest (classifier)");
  bench->add_option("--test-manifest", cfg.test_manifest, "held-out manifest");
  bench->add_option("--targets-per-genre", cfg.targets_per_genre,
                    "benchmark targets per genre");
  bench->add_option("--gd-iterations", cfg.gd_iterations, "gradient-descent steps");
  bench->add_flag("--equal-evals", cfg.equal_evals,
                  "give gradient descent the GA's evaluation budget");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Optimize covers along one feature's grid");
  add_common(sweep, cfg);
  add_ga_flags(sweep, cfg);
  sweep->add_option("--predictor", cfg.predictor, "predictor weights (.caw)");
  sweep->add_option("--feature", cfg.sweep_feature, "feature to sweep");
  sweep->add_option("--steps", cfg.sweep_steps, "grid size over [0,1]");
  sweep->add_option("--base", cfg.sweep_base,
                    "'mean' or nine comma-separated raw values");
  sweep->add_option("--genre", cfg.genre, "genre name for conditional generation");

  CLI::App* album = app.add_subcommand(
      "album", "Optimize one cover per track of an album");
  add_common(album, cfg);
  add_ga_flags(album, cfg);
  album->add_option("--predictor", cfg.predictor, "predictor weights (.caw)");
  album->add_option("--tracks", cfg.tracks, "CSV with the nine feature columns");
  album->add_option("--genre", cfg.genre, "genre name for conditional generation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return coverart::cmd_synth_data(cfg);
    if (train->parsed()) return coverart::cmd_train_fitness(cfg);
    if (opt->parsed()) return coverart::cmd_optimize(cfg);
    if (bench->parsed()) return coverart::cmd_benchmark(cfg);
    if (sweep->parsed()) return coverart::cmd_sweep(cfg);
    if (album->parsed()) return coverart::cmd_album(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
