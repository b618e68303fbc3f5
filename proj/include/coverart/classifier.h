#pragma once

#include <cstdint>
#include <vector>

#include "coverart/dataset.h"
#include "coverart/dense_net.h"
#include "coverart/image_io.h"

namespace coverart {

struct ClassifierTrainConfig {
  size_t epochs = 100;
  double lr = 0.001;
  size_t batch = 64;
  uint64_t seed = 0;
};

DenseNet build_classifier(size_t image_size, Rng& rng);

// Softmax cross-entropy training with Adam; bit-reproducible per seed.
DenseNet train_genre_classifier(const std::vector<CoverExample>& data,
                                const ClassifierTrainConfig& cfg);

std::vector<double> classifier_probs(const DenseNet& clf, const Image& img);
int classify_genre(const DenseNet& clf, const Image& img);  // lowest-index ties

double genre_accuracy(const DenseNet& clf, const std::vector<Image>& covers,
                      const std::vector<int>& genres);

}  // namespace coverart
