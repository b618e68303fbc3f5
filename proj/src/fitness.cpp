#include "coverart/fitness.h"

#include <cmath>
#include <stdexcept>

#include "coverart/csv.h"
#include "coverart/generator.h"
#include "coverart/optim.h"
#include "coverart/world.h"

namespace coverart {

DenseNet build_predictor(size_t image_size, Rng& rng) {
  const size_t in = 3 * image_size * image_size;
  return build_net({in, 256, 64, kNumFeatures},
                   {Act::relu, Act::relu, Act::sigmoid}, rng);
}

static DenseNet build_discriminator() {
  // Single logistic layer on feature vectors.  Weights start at zero (the
  // symmetric start of a convex logistic model), so early training does not
  // push the predictor in an arbitrary random direction.
  DenseNet d;
  Layer l;
  l.in = kNumFeatures;
  l.out = 1;
  l.act = Act::sigmoid;
  l.W.assign(kNumFeatures, 0.0);
  l.b.assign(1, 0.0);
  d.layers.push_back(std::move(l));
  return d;
}

std::vector<double> predict_features(const DenseNet& pred, const Image& img) {
  return pred.forward(image_to_planar(img));
}

std::vector<double> predictor_embedding(const DenseNet& pred,
                                        const Image& img) {
  return pred.penultimate(image_to_planar(img));
}

double feature_mse(const std::vector<double>& predicted,
                   const std::vector<double>& target) {
  if (predicted.size() != target.size())
    throw std::invalid_argument("feature_mse: size mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(predicted.size());
}

static const double kProbClip = 1e-12;

static double clip_prob(double p) {
  if (p < kProbClip) return kProbClip;
  if (p > 1.0 - kProbClip) return 1.0 - kProbClip;
  return p;
}

static double val_mse_of(const DenseNet& pred, const std::vector<double>& X,
                         const std::vector<double>& T, size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> F(n * kNumFeatures);
  pred.forward_batch(X.data(), F.data(), n, true);
  double acc = 0.0;
  for (size_t i = 0; i < F.size(); ++i) {
    const double d = F[i] - T[i];
    acc += d * d;
  }
  return acc / static_cast<double>(F.size());
}

FitnessTrainResult train_fitness(const std::vector<CoverExample>& data,
                                 const FitnessTrainConfig& cfg) {
  if (data.empty()) throw std::invalid_argument("train_fitness: empty dataset");
  if (cfg.lambda < 0.0)
    throw std::invalid_argument("train_fitness: lambda must be >= 0");
  const size_t flat = data[0].cover.data.size();
  const size_t image_size = data[0].cover.size;

  const Rng root(cfg.seed);
  std::vector<size_t> train_idx, val_idx;
  split_examples(data.size(), cfg.val_fraction, root.stream("val-split"),
                 train_idx, val_idx);

  std::vector<double> Xtr(train_idx.size() * flat), Ttr(train_idx.size() * kNumFeatures);
  for (size_t r = 0; r < train_idx.size(); ++r) {
    const auto planar = image_to_planar(data[train_idx[r]].cover);
    std::copy(planar.begin(), planar.end(), Xtr.begin() + r * flat);
    for (size_t j = 0; j < kNumFeatures; ++j)
      Ttr[r * kNumFeatures + j] = data[train_idx[r]].features[j];
  }
  std::vector<double> Xval(val_idx.size() * flat), Tval(val_idx.size() * kNumFeatures);
  for (size_t r = 0; r < val_idx.size(); ++r) {
    const auto planar = image_to_planar(data[val_idx[r]].cover);
    std::copy(planar.begin(), planar.end(), Xval.begin() + r * flat);
    for (size_t j = 0; j < kNumFeatures; ++j)
      Tval[r * kNumFeatures + j] = data[val_idx[r]].features[j];
  }

  FitnessTrainResult res;
  Rng init_rng = root.stream("predictor");
  res.predictor = build_predictor(image_size, init_rng);
  res.discriminator = build_discriminator();
  res.val_idx = val_idx;
  res.initial_val_mse =
      val_mse_of(res.predictor, Xval, Tval, val_idx.size());

  NetOptimizer opt_pred(OptKind::adam, cfg.lr, res.predictor);
  NetOptimizer opt_disc(OptKind::adam, cfg.lr, res.discriminator);
  Rng batch_rng = root.stream("batches");

  const size_t ntr = train_idx.size();
  std::vector<size_t> order(ntr);
  for (size_t i = 0; i < ntr; ++i) order[i] = i;

  for (size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    batch_rng.shuffle_indices(order);
    double reg_sum = 0.0, disc_sum = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < ntr; start += cfg.batch, ++batches) {
      const size_t n = std::min(cfg.batch, ntr - start);
      std::vector<double> X(n * flat), T(n * kNumFeatures);
      for (size_t r = 0; r < n; ++r) {
        const size_t src = order[start + r];
        std::copy(Xtr.begin() + src * flat, Xtr.begin() + (src + 1) * flat,
                  X.begin() + r * flat);
        std::copy(Ttr.begin() + src * kNumFeatures,
                  Ttr.begin() + (src + 1) * kNumFeatures,
                  T.begin() + r * kNumFeatures);
      }

      BatchTrace trP;
      res.predictor.forward_batch(X.data(), n, trP, true);
      const std::vector<double>& F = trP.acts.back();

      // discriminator ascent on log D(t) + log(1 - D(f(c)))
      BatchTrace trDr, trDf;
      res.discriminator.forward_batch(T.data(), n, trDr, false);
      res.discriminator.forward_batch(F.data(), n, trDf, false);
      std::vector<double> dReal(n), dFake(n);
      double log_real = 0.0, log_fake = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double pt = clip_prob(trDr.acts.back()[i]);
        const double pf = clip_prob(trDf.acts.back()[i]);
        dReal[i] = 1.0 / (static_cast<double>(n) * pt);
        dFake[i] = -1.0 / (static_cast<double>(n) * (1.0 - pf));
        log_real += std::log(pt);
        log_fake += std::log(1.0 - pf);
      }
      Grads gD = res.discriminator.zero_grads();
      res.discriminator.backward_batch(trDr, dReal.data(), &gD, nullptr, false);
      res.discriminator.backward_batch(trDf, dFake.data(), &gD, nullptr, false);
      for (auto& v : gD.dW[0]) v = -v;  // ascent
      for (auto& v : gD.db[0]) v = -v;
      opt_disc.step(res.discriminator, gD);

      // predictor descent on |f - t|^2 + lambda * log(1 - D(f))
      std::vector<double> dY(n * kNumFeatures);
      double reg = 0.0;
      for (size_t i = 0; i < n * kNumFeatures; ++i) {
        const double r2 = F[i] - T[i];
        reg += r2 * r2;
        dY[i] = 2.0 * r2 / static_cast<double>(n);
      }
      if (cfg.lambda > 0.0) {
        BatchTrace trDf2;
        res.discriminator.forward_batch(F.data(), n, trDf2, false);
        std::vector<double> dAdv(n);
        for (size_t i = 0; i < n; ++i) {
          const double pf = clip_prob(trDf2.acts.back()[i]);
          dAdv[i] = -cfg.lambda / (static_cast<double>(n) * (1.0 - pf));
        }
        std::vector<double> dF(n * kNumFeatures);
        res.discriminator.backward_batch(trDf2, dAdv.data(), nullptr,
                                         dF.data(), false);
        for (size_t i = 0; i < dY.size(); ++i) dY[i] += dF[i];
      }
      Grads gP = res.predictor.zero_grads();
      res.predictor.backward_batch(trP, dY.data(), &gP, nullptr, true);
      opt_pred.step(res.predictor, gP);

      const double batch_reg = reg / static_cast<double>(n);
      const double batch_disc =
          -0.5 * (log_real + log_fake) / static_cast<double>(n);
      if (!std::isfinite(batch_reg) || !std::isfinite(batch_disc) ||
          !res.predictor.finite())
        throw std::runtime_error("train_fitness: non-finite loss at epoch " +
                                 std::to_string(epoch) + ", batch " +
                                 std::to_string(batches));
      reg_sum += batch_reg;
      disc_sum += batch_disc;
    }

    TrainLogRow row;
    row.epoch = epoch;
    row.regression_loss = reg_sum / static_cast<double>(batches);
    row.disc_loss = disc_sum / static_cast<double>(batches);
    row.val_mse = val_mse_of(res.predictor, Xval, Tval, val_idx.size());
    res.log.push_back(row);
  }

  res.final_val_mse = res.log.empty() ? res.initial_val_mse : res.log.back().val_mse;
  return res;
}

void write_train_log(const std::string& path,
                     const std::vector<TrainLogRow>& log) {
  CsvWriter csv(path, {"epoch", "regression_loss", "disc_loss", "val_mse"});
  for (const auto& r : log)
    csv.row({CsvWriter::num(r.epoch), CsvWriter::num(r.regression_loss),
             CsvWriter::num(r.disc_loss), CsvWriter::num(r.val_mse)});
}

static void check_ctx(const FitnessContext& ctx) {
  if (!ctx.pred || !ctx.gen) throw std::invalid_argument("fitness: null nets");
  if (ctx.target.size() != kNumFeatures)
    throw std::invalid_argument("fitness: target must have 9 coordinates");
  if (ctx.pred->input_dim() != ctx.gen->output_dim())
    throw std::invalid_argument("fitness: generator/predictor shape mismatch");
}

double fitness_value(const FitnessContext& ctx, const std::vector<double>& z) {
  check_ctx(ctx);
  double score;
  fitness_batch(ctx, z.data(), 1, &score, false);
  return score;
}

std::vector<double> fitness_gradient(const FitnessContext& ctx,
                                     const std::vector<double>& z) {
  check_ctx(ctx);
  const std::vector<double> x =
      generator_input(*ctx.gen, z, ctx.genre, ctx.latent_dim);
  BatchTrace trG, trP;
  ctx.gen->forward_batch(x.data(), 1, trG, false);
  ctx.pred->forward_batch(trG.acts.back().data(), 1, trP, false);
  const std::vector<double>& f = trP.acts.back();
  std::vector<double> dY(kNumFeatures);
  for (size_t i = 0; i < kNumFeatures; ++i)
    dY[i] = -2.0 * (f[i] - ctx.target[i]);
  std::vector<double> dImg(ctx.gen->output_dim());
  ctx.pred->backward_batch(trP, dY.data(), nullptr, dImg.data(), false);
  std::vector<double> dX(ctx.gen->input_dim());
  ctx.gen->backward_batch(trG, dImg.data(), nullptr, dX.data(), false);
  return std::vector<double>(dX.begin(), dX.begin() + ctx.latent_dim);
}

void fitness_batch(const FitnessContext& ctx, const double* Z, size_t n,
                   double* scores, bool parallel) {
  const size_t gin = ctx.gen->input_dim();
  const size_t flat = ctx.gen->output_dim();
  std::vector<double> X(n * gin, 0.0);
  for (size_t r = 0; r < n; ++r) {
    const std::vector<double> z(Z + r * ctx.latent_dim,
                                Z + (r + 1) * ctx.latent_dim);
    const std::vector<double> x =
        generator_input(*ctx.gen, z, ctx.genre, ctx.latent_dim);
    std::copy(x.begin(), x.end(), X.begin() + r * gin);
  }
  std::vector<double> imgs(n * flat);
  ctx.gen->forward_batch(X.data(), imgs.data(), n, parallel);
  std::vector<double> F(n * kNumFeatures);
  ctx.pred->forward_batch(imgs.data(), F.data(), n, parallel);
  for (size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (size_t j = 0; j < kNumFeatures; ++j) {
      const double d = F[r * kNumFeatures + j] - ctx.target[j];
      acc += d * d;
    }
    scores[r] = -acc;
  }
}

}  // namespace coverart
