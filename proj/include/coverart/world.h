#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coverart/dense_net.h"
#include "coverart/generator.h"

namespace coverart {

inline constexpr size_t kNumFeatures = 9;
inline constexpr size_t kNumStats = 7;
inline constexpr size_t kNumGenres = 5;

extern const char* const kFeatureNames[kNumFeatures];
extern const char* const kGenreNames[kNumGenres];

// Raw manifest units per feature (tempo in BPM, loudness in dB, rest [0,1]).
struct FeatureBounds {
  double lo, hi;
};
extern const FeatureBounds kFeatureBounds[kNumFeatures];

double feature_to_raw(size_t i, double v01);
double feature_from_raw(size_t i, double raw);
int genre_index(const std::string& name);  // -1 if unknown

// Seven image statistics drive the feature law: per-channel mean (3),
// per-channel std (3), and mean horizontal+vertical gradient magnitude (1).
// Input is the flat planar RGB vector the decoder emits.
std::array<double, kNumStats> image_stats(const std::vector<double>& planar,
                                          size_t size);

// Self-contained ground truth: a frozen decoder plus a fixed smooth map from
// image statistics to nine audio features, plus a genre rule that is the
// argmax of a fixed linear map of the features (nearest of five prototype
// feature vectors).  Everything is derived deterministically from one seed.
struct SyntheticWorld {
  uint64_t seed = 0;
  size_t latent_dim = 32;
  size_t image_size = 32;
  size_t probe_size = 2048;

  DenseNet decoder;

  std::vector<double> fmap;        // kNumFeatures x kNumStats
  std::vector<double> mu, sd, off; // per-feature standardization and offset
  double squash = 2.0;             // slope applied after standardization

  std::vector<double> proto;       // kNumGenres x kNumFeatures
  double margin = 0.0;             // min top-2 logit gap for clean examples
  std::vector<double> feature_mean;

  std::vector<double> features(const std::vector<double>& planar) const;
  void features_batch(const double* planar, size_t n, double* out,
                      bool parallel) const;

  std::vector<double> genre_logits(const std::vector<double>& feats) const;
  int genre_of(const std::vector<double>& feats) const;
  double top2_gap(const std::vector<double>& feats) const;
};

struct WorldConfig {
  uint64_t seed = 1001;
  size_t latent_dim = 32;
  size_t image_size = 32;
  size_t probe_size = 2048;
};

SyntheticWorld build_world(const WorldConfig& cfg);

}  // namespace coverart
