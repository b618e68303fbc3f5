#include "coverart/album.h"

#include <cmath>
#include <stdexcept>

#include "coverart/fitness.h"
#include "coverart/generator.h"
#include "coverart/world.h"

namespace coverart {

AlbumResult album_batch(const DenseNet& gen, const DenseNet& pred,
                        const std::vector<std::vector<double>>& tracks,
                        int genre, const GaConfig& ga, uint64_t master_seed) {
  if (tracks.empty()) throw std::invalid_argument("album_batch: no tracks");
  const Rng master(master_seed);
  const size_t latent_dim =
      genre >= 0 ? gen.input_dim() - kNumGenres : gen.input_dim();
  const size_t side = static_cast<size_t>(
      std::lround(std::sqrt(static_cast<double>(gen.output_dim()) / 3.0)));

  AlbumResult res;
  for (size_t i = 0; i < tracks.size(); ++i) {
    FitnessContext ctx;
    ctx.pred = &pred;
    ctx.gen = &gen;
    ctx.latent_dim = latent_dim;
    ctx.genre = genre;
    ctx.target = tracks[i];

    GaConfig gc = ga;
    gc.seed = master.stream(3000 + i).seed();
    const GaResult r = run_ga(
        [&](const double* Z, size_t n, double* scores) {
          fitness_batch(ctx, Z, n, scores, true);
        },
        latent_dim, gc);

    res.covers.push_back(render(gen, r.best_z, side, genre));
    res.fitness.push_back(r.best_fitness);
    res.predicted.push_back(predict_features(pred, res.covers.back()));
  }
  return res;
}

}  // namespace coverart
