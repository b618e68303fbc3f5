#pragma once

#include <cstdint>
#include <vector>

#include "coverart/dense_net.h"
#include "coverart/image_io.h"
#include "coverart/rng.h"

namespace coverart {

// The cover generator is a frozen randomly-initialized dense net mapping a
// latent vector (plus a one-hot genre block when conditional) to a flat
// planar RGB image in [0,1]: [R plane, G plane, B plane].
struct GeneratorConfig {
  uint64_t seed = 0;
  size_t latent_dim = 32;
  size_t image_size = 32;
  std::vector<size_t> hidden = {128, 256};
  bool conditional = false;
  size_t n_genres = 5;
};

DenseNet build_generator(const GeneratorConfig& cfg);

std::vector<double> sample_latent(Rng& rng, size_t dim);

// Latent (+ optional genre one-hot) packed into the net's input layout.
std::vector<double> generator_input(const DenseNet& gen,
                                    const std::vector<double>& z, int genre,
                                    size_t latent_dim);

Image planar_to_image(const std::vector<double>& flat, size_t size);
std::vector<double> image_to_planar(const Image& img);

Image render(const DenseNet& gen, const std::vector<double>& z,
             size_t image_size, int genre = -1);

}  // namespace coverart
