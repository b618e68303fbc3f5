#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace coverart {

// Union of every subcommand's knobs.  Resolution order: built-in defaults,
// then a JSON config file, then explicit command-line flags.  The resolved
// struct is serialized next to each run's outputs.
struct RunConfig {
  uint64_t seed = 42;
  uint64_t world_seed = 1001;
  std::string out;
  int threads = 0;  // 0 = library default (all cores)
  size_t latent_dim = 32;
  size_t image_size = 32;

  // synth-data
  size_t n_per_genre = 300;
  size_t test_per_genre = 12;

  // train-fitness
  std::string manifest;
  double lambda = 9.0;
  size_t epochs = 100;
  double lr = 0.001;
  size_t batch = 64;

  // shared weight paths
  std::string predictor;
  std::string classifier;

  // optimize
  std::string method = "ga";
  std::string target;  // nine comma-separated values in raw feature units
  int row = -1;        // or: row index into --manifest
  std::string genre;   // conditional generation
  double gd_lr = 0.15;
  size_t gd_iterations = 400;
  size_t population = 250;
  double mutation_rate = 0.05;
  double selection_rate = 0.20;
  double sigma = 0.1;
  size_t ga_iterations = 200;

  // benchmark
  std::string test_manifest;
  size_t targets_per_genre = 2;
  bool equal_evals = false;

  // sweep
  std::string sweep_feature = "danceability";
  size_t sweep_steps = 11;
  std::string sweep_base = "mean";  // "mean" or nine raw values

  // album
  std::string tracks;
};

nlohmann::json config_to_json(const RunConfig& cfg);
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path, RunConfig base);

int cmd_synth_data(const RunConfig& cfg);
int cmd_train_fitness(const RunConfig& cfg);
int cmd_optimize(const RunConfig& cfg);
int cmd_benchmark(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_album(const RunConfig& cfg);

}  // namespace coverart
