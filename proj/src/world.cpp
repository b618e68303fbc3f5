#include "coverart/world.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coverart {

const char* const kFeatureNames[kNumFeatures] = {
    "danceability", "valence",          "energy",
    "tempo",        "loudness",         "speechiness",
    "instrumentalness", "liveness",     "acousticness"};

const char* const kGenreNames[kNumGenres] = {"country", "dance", "kids",
                                             "metal", "rap"};

const FeatureBounds kFeatureBounds[kNumFeatures] = {
    {0, 1}, {0, 1}, {0, 1}, {0, 250}, {-60, 0}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};

double feature_to_raw(size_t i, double v01) {
  const FeatureBounds& b = kFeatureBounds[i];
  return b.lo + v01 * (b.hi - b.lo);
}

double feature_from_raw(size_t i, double raw) {
  const FeatureBounds& b = kFeatureBounds[i];
  return (raw - b.lo) / (b.hi - b.lo);
}

int genre_index(const std::string& name) {
  for (size_t g = 0; g < kNumGenres; ++g)
    if (name == kGenreNames[g]) return static_cast<int>(g);
  return -1;
}

// How strongly each statistic can drive a feature: the texture statistics
// (stds, gradient) carry most of the signal, the flat channel means less.
static const double kStatWeight[kNumStats] = {0.3, 0.3, 0.3, 2.0, 2.0, 2.0, 2.0};

// Per-feature offsets spread the feature marginals over [0,1] so targets do
// not cluster at 0.5.
static const double kFeatureOffset[kNumFeatures] = {-1.5, 1.5, -1.0, 1.0, -0.5,
                                                    0.5,  0.0, -0.75, 0.75};

std::array<double, kNumStats> image_stats(const std::vector<double>& planar,
                                          size_t size) {
  const size_t plane = size * size;
  if (planar.size() != 3 * plane)
    throw std::invalid_argument("image_stats: size mismatch");
  std::array<double, kNumStats> s{};
  for (size_t c = 0; c < 3; ++c) {
    const double* p = planar.data() + c * plane;
    double m = 0.0;
    for (size_t i = 0; i < plane; ++i) m += p[i];
    m /= static_cast<double>(plane);
    double var = 0.0;
    for (size_t i = 0; i < plane; ++i) {
      const double d = p[i] - m;
      var += d * d;
    }
    var /= static_cast<double>(plane);
    s[c] = m;
    s[3 + c] = std::sqrt(var);
  }
  double gx = 0.0, gy = 0.0;
  for (size_t c = 0; c < 3; ++c) {
    const double* p = planar.data() + c * plane;
    for (size_t y = 0; y < size; ++y)
      for (size_t x = 0; x + 1 < size; ++x)
        gx += std::abs(p[y * size + x + 1] - p[y * size + x]);
    for (size_t y = 0; y + 1 < size; ++y)
      for (size_t x = 0; x < size; ++x)
        gy += std::abs(p[(y + 1) * size + x] - p[y * size + x]);
  }
  const double npairs = static_cast<double>(3 * size * (size - 1));
  s[6] = gx / npairs + gy / npairs;
  return s;
}

std::vector<double> SyntheticWorld::features(
    const std::vector<double>& planar) const {
  const std::array<double, kNumStats> st = image_stats(planar, image_size);
  std::vector<double> f(kNumFeatures);
  for (size_t i = 0; i < kNumFeatures; ++i) {
    double raw = 0.0;
    for (size_t j = 0; j < kNumStats; ++j) raw += fmap[i * kNumStats + j] * st[j];
    const double zscore = (raw - mu[i]) / sd[i];
    f[i] = 1.0 / (1.0 + std::exp(-(zscore * squash + off[i])));
  }
  return f;
}

void SyntheticWorld::features_batch(const double* planar, size_t n,
                                    double* out, bool parallel) const {
  const size_t stride = 3 * image_size * image_size;
#pragma omp parallel for schedule(static) if (parallel)
  for (long r = 0; r < static_cast<long>(n); ++r) {
    const std::vector<double> img(planar + r * stride,
                                  planar + (r + 1) * stride);
    const std::vector<double> f = features(img);
    for (size_t i = 0; i < kNumFeatures; ++i) out[r * kNumFeatures + i] = f[i];
  }
}

std::vector<double> SyntheticWorld::genre_logits(
    const std::vector<double>& feats) const {
  std::vector<double> logits(kNumGenres);
  for (size_t g = 0; g < kNumGenres; ++g) {
    double dotpf = 0.0, nrm = 0.0;
    for (size_t i = 0; i < kNumFeatures; ++i) {
      const double p = proto[g * kNumFeatures + i];
      dotpf += p * feats[i];
      nrm += p * p;
    }
    logits[g] = 2.0 * dotpf - nrm;
  }
  return logits;
}

int SyntheticWorld::genre_of(const std::vector<double>& feats) const {
  const std::vector<double> l = genre_logits(feats);
  size_t best = 0;
  for (size_t g = 1; g < kNumGenres; ++g)
    if (l[g] > l[best]) best = g;
  return static_cast<int>(best);
}

double SyntheticWorld::top2_gap(const std::vector<double>& feats) const {
  std::vector<double> l = genre_logits(feats);
  std::sort(l.begin(), l.end());
  return l[kNumGenres - 1] - l[kNumGenres - 2];
}

static double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

SyntheticWorld build_world(const WorldConfig& cfg) {
  SyntheticWorld w;
  w.seed = cfg.seed;
  w.latent_dim = cfg.latent_dim;
  w.image_size = cfg.image_size;
  w.probe_size = cfg.probe_size;

  const Rng root(cfg.seed);

  GeneratorConfig gc;
  gc.seed = derive_seed(cfg.seed, hash_tag("decoder"));
  gc.latent_dim = cfg.latent_dim;
  gc.image_size = cfg.image_size;
  w.decoder = build_generator(gc);

  // Probe the decoder's output distribution to calibrate the feature law.
  const size_t n = cfg.probe_size;
  const size_t flat = 3 * cfg.image_size * cfg.image_size;
  Rng probe_rng = root.stream("probe");
  std::vector<double> Z(n * cfg.latent_dim);
  for (auto& v : Z) v = probe_rng.normal();
  std::vector<double> imgs(n * flat);
  w.decoder.forward_batch(Z.data(), imgs.data(), n, true);

  std::vector<double> stats(n * kNumStats);
#pragma omp parallel for schedule(static)
  for (long r = 0; r < static_cast<long>(n); ++r) {
    const std::vector<double> img(imgs.begin() + r * flat,
                                  imgs.begin() + (r + 1) * flat);
    const auto s = image_stats(img, cfg.image_size);
    for (size_t j = 0; j < kNumStats; ++j) stats[r * kNumStats + j] = s[j];
  }

  Rng map_rng = root.stream("feature-map");
  w.fmap.resize(kNumFeatures * kNumStats);
  for (size_t i = 0; i < kNumFeatures; ++i)
    for (size_t j = 0; j < kNumStats; ++j)
      w.fmap[i * kNumStats + j] = map_rng.normal() * kStatWeight[j];

  w.mu.assign(kNumFeatures, 0.0);
  w.sd.assign(kNumFeatures, 0.0);
  w.off.assign(kFeatureOffset, kFeatureOffset + kNumFeatures);
  std::vector<double> raw(n * kNumFeatures);
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < kNumFeatures; ++i) {
      double acc = 0.0;
      for (size_t j = 0; j < kNumStats; ++j)
        acc += w.fmap[i * kNumStats + j] * stats[r * kNumStats + j];
      raw[r * kNumFeatures + i] = acc;
      w.mu[i] += acc;
    }
  for (size_t i = 0; i < kNumFeatures; ++i) w.mu[i] /= static_cast<double>(n);
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < kNumFeatures; ++i) {
      const double d = raw[r * kNumFeatures + i] - w.mu[i];
      w.sd[i] += d * d;
    }
  for (size_t i = 0; i < kNumFeatures; ++i) {
    w.sd[i] = std::sqrt(w.sd[i] / static_cast<double>(n));
    if (w.sd[i] <= 0.0)
      throw std::runtime_error("world calibration: degenerate statistic");
  }

  std::vector<double> F(n * kNumFeatures);
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < kNumFeatures; ++i) {
      const double z = (raw[r * kNumFeatures + i] - w.mu[i]) / w.sd[i];
      F[r * kNumFeatures + i] =
          1.0 / (1.0 + std::exp(-(z * w.squash + w.off[i])));
    }
  w.feature_mean.assign(kNumFeatures, 0.0);
  for (size_t r = 0; r < n; ++r)
    for (size_t i = 0; i < kNumFeatures; ++i)
      w.feature_mean[i] += F[r * kNumFeatures + i];
  for (auto& m : w.feature_mean) m /= static_cast<double>(n);

  // Genre prototypes: k-means over the probe features with farthest-point
  // seeding, then 50 Lloyd iterations.  Genres are the Voronoi cells,
  // expressed as the argmax of the linear logits 2 p.f - |p|^2.
  Rng km_rng = root.stream("genres");
  w.proto.assign(kNumGenres * kNumFeatures, 0.0);
  auto frow = [&](size_t r) { return F.data() + r * kNumFeatures; };
  auto d2 = [&](const double* a, const double* b) {
    double acc = 0.0;
    for (size_t i = 0; i < kNumFeatures; ++i) {
      const double d = a[i] - b[i];
      acc += d * d;
    }
    return acc;
  };
  {
    const size_t first = static_cast<size_t>(km_rng.below(n));
    std::copy(frow(first), frow(first) + kNumFeatures, w.proto.begin());
    for (size_t g = 1; g < kNumGenres; ++g) {
      size_t far = 0;
      double far_d = -1.0;
      for (size_t r = 0; r < n; ++r) {
        double best = d2(frow(r), w.proto.data());
        for (size_t h = 1; h < g; ++h)
          best = std::min(best, d2(frow(r), w.proto.data() + h * kNumFeatures));
        if (best > far_d) {
          far_d = best;
          far = r;
        }
      }
      std::copy(frow(far), frow(far) + kNumFeatures,
                w.proto.begin() + g * kNumFeatures);
    }
    std::vector<size_t> label(n);
    for (int it = 0; it < 50; ++it) {
      for (size_t r = 0; r < n; ++r) {
        size_t best = 0;
        double bd = d2(frow(r), w.proto.data());
        for (size_t g = 1; g < kNumGenres; ++g) {
          const double dd = d2(frow(r), w.proto.data() + g * kNumFeatures);
          if (dd < bd) {
            bd = dd;
            best = g;
          }
        }
        label[r] = best;
      }
      for (size_t g = 0; g < kNumGenres; ++g) {
        double acc[kNumFeatures] = {};
        size_t cnt = 0;
        for (size_t r = 0; r < n; ++r)
          if (label[r] == g) {
            ++cnt;
            for (size_t i = 0; i < kNumFeatures; ++i) acc[i] += frow(r)[i];
          }
        if (cnt > 0)
          for (size_t i = 0; i < kNumFeatures; ++i)
            w.proto[g * kNumFeatures + i] = acc[i] / static_cast<double>(cnt);
      }
    }
  }

  std::vector<double> gaps(n);
  for (size_t r = 0; r < n; ++r) {
    const std::vector<double> f(frow(r), frow(r) + kNumFeatures);
    gaps[r] = w.top2_gap(f);
  }
  w.margin = quantile(gaps, 0.25);
  return w;
}

}  // namespace coverart
