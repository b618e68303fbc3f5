#include "coverart/classifier.h"

#include <cmath>
#include <stdexcept>

#include "coverart/generator.h"
#include "coverart/optim.h"
#include "coverart/world.h"

namespace coverart {

DenseNet build_classifier(size_t image_size, Rng& rng) {
  const size_t in = 3 * image_size * image_size;
  return build_net({in, 256, 64, kNumGenres},
                   {Act::relu, Act::relu, Act::identity}, rng);
}

static void softmax_row(const double* logits, double* p, size_t k) {
  double mx = logits[0];
  for (size_t i = 1; i < k; ++i) mx = std::max(mx, logits[i]);
  double sum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    p[i] = std::exp(logits[i] - mx);
    sum += p[i];
  }
  for (size_t i = 0; i < k; ++i) p[i] /= sum;
}

DenseNet train_genre_classifier(const std::vector<CoverExample>& data,
                                const ClassifierTrainConfig& cfg) {
  if (data.empty())
    throw std::invalid_argument("train_genre_classifier: empty dataset");
  const size_t flat = data[0].cover.data.size();
  const Rng root(cfg.seed);
  Rng init_rng = root.stream("classifier");
  DenseNet clf = build_classifier(data[0].cover.size, init_rng);

  std::vector<double> X(data.size() * flat);
  std::vector<int> Y(data.size());
  for (size_t r = 0; r < data.size(); ++r) {
    const auto planar = image_to_planar(data[r].cover);
    std::copy(planar.begin(), planar.end(), X.begin() + r * flat);
    Y[r] = data[r].genre;
  }

  NetOptimizer opt(OptKind::adam, cfg.lr, clf);
  Rng batch_rng = root.stream("batches");
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    batch_rng.shuffle_indices(order);
    for (size_t start = 0; start < order.size(); start += cfg.batch) {
      const size_t n = std::min(cfg.batch, order.size() - start);
      std::vector<double> Xb(n * flat);
      std::vector<int> Yb(n);
      for (size_t r = 0; r < n; ++r) {
        const size_t src = order[start + r];
        std::copy(X.begin() + src * flat, X.begin() + (src + 1) * flat,
                  Xb.begin() + r * flat);
        Yb[r] = Y[src];
      }
      BatchTrace tr;
      clf.forward_batch(Xb.data(), n, tr, true);
      const std::vector<double>& logits = tr.acts.back();
      std::vector<double> dY(n * kNumGenres);
      double loss = 0.0;
      for (size_t r = 0; r < n; ++r) {
        double p[kNumGenres];
        softmax_row(logits.data() + r * kNumGenres, p, kNumGenres);
        loss -= std::log(std::max(p[Yb[r]], 1e-300));
        for (size_t j = 0; j < kNumGenres; ++j)
          dY[r * kNumGenres + j] =
              (p[j] - (j == static_cast<size_t>(Yb[r]) ? 1.0 : 0.0)) /
              static_cast<double>(n);
      }
      if (!std::isfinite(loss))
        throw std::runtime_error(
            "train_genre_classifier: non-finite loss at epoch " +
            std::to_string(epoch));
      Grads g = clf.zero_grads();
      clf.backward_batch(tr, dY.data(), &g, nullptr, true);
      opt.step(clf, g);
    }
  }
  return clf;
}

std::vector<double> classifier_probs(const DenseNet& clf, const Image& img) {
  const std::vector<double> logits = clf.forward(image_to_planar(img));
  std::vector<double> p(logits.size());
  softmax_row(logits.data(), p.data(), logits.size());
  return p;
}

int classify_genre(const DenseNet& clf, const Image& img) {
  const std::vector<double> p = classifier_probs(clf, img);
  size_t best = 0;
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[best]) best = i;  // strict: ties keep the lowest index
  return static_cast<int>(best);
}

double genre_accuracy(const DenseNet& clf, const std::vector<Image>& covers,
                      const std::vector<int>& genres) {
  if (covers.empty() || covers.size() != genres.size())
    throw std::invalid_argument("genre_accuracy: bad input sizes");
  size_t hit = 0;
  for (size_t i = 0; i < covers.size(); ++i)
    if (classify_genre(clf, covers[i]) == genres[i]) ++hit;
  return static_cast<double>(hit) / static_cast<double>(covers.size());
}

}  // namespace coverart
