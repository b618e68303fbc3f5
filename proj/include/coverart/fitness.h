#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coverart/dataset.h"
#include "coverart/dense_net.h"
#include "coverart/image_io.h"

namespace coverart {

// Predictor: flattened image -> 9 sigmoid feature outputs.
// Discriminator: single dense layer, 9 -> 1 sigmoid, on feature vectors.

struct FitnessTrainConfig {
  double lambda = 9.0;
  size_t epochs = 100;
  double lr = 0.001;
  size_t batch = 64;
  uint64_t seed = 0;
  double val_fraction = 0.15;
};

struct TrainLogRow {
  size_t epoch;
  double regression_loss;
  double disc_loss;
  double val_mse;
};

struct FitnessTrainResult {
  DenseNet predictor;
  DenseNet discriminator;
  std::vector<TrainLogRow> log;
  double initial_val_mse = 0.0;  // before the first update
  double final_val_mse = 0.0;
  std::vector<size_t> val_idx;   // cover-level validation split
};

// Alternating per-batch updates: one ascent step on the discriminator's
// objective log D(t) + log(1-D(f(c))), then one descent step on the
// predictor's loss |f(c)-t|^2 + lambda*log(1-D(f(c))).  Bit-reproducible
// for a fixed seed; lambda=0 leaves the predictor decoupled from the
// discriminator.
FitnessTrainResult train_fitness(const std::vector<CoverExample>& data,
                                 const FitnessTrainConfig& cfg);

DenseNet build_predictor(size_t image_size, Rng& rng);

std::vector<double> predict_features(const DenseNet& pred, const Image& img);

// Penultimate-layer activations; the embedding space for the Frechet image
// metric.
std::vector<double> predictor_embedding(const DenseNet& pred, const Image& img);

void write_train_log(const std::string& path,
                     const std::vector<TrainLogRow>& log);

// The search objective: score(z) = -|f(G(z)) - a|^2, summed over the nine
// coordinates.  genre is used only when the generator is conditional.
struct FitnessContext {
  const DenseNet* pred = nullptr;
  const DenseNet* gen = nullptr;
  size_t latent_dim = 32;
  size_t image_size = 32;
  int genre = -1;
  std::vector<double> target;
};

double fitness_value(const FitnessContext& ctx, const std::vector<double>& z);

// Analytic gradient of the score w.r.t. z (both nets stay frozen).
std::vector<double> fitness_gradient(const FitnessContext& ctx,
                                     const std::vector<double>& z);

// Population evaluation used by the GA: scores[i] for each row of Z.
void fitness_batch(const FitnessContext& ctx, const double* Z, size_t n,
                   double* scores, bool parallel);

// Mean-over-coordinates squared error; equals -fitness/9 for the same pair.
double feature_mse(const std::vector<double>& predicted,
                   const std::vector<double>& target);

}  // namespace coverart
