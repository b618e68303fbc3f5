#include "coverart/generator.h"

#include <stdexcept>

namespace coverart {

DenseNet build_generator(const GeneratorConfig& cfg) {
  const size_t in_dim =
      cfg.latent_dim + (cfg.conditional ? cfg.n_genres : 0);
  std::vector<size_t> dims = {in_dim};
  for (size_t h : cfg.hidden) dims.push_back(h);
  dims.push_back(3 * cfg.image_size * cfg.image_size);
  std::vector<Act> acts(cfg.hidden.size(), Act::relu);
  acts.push_back(Act::sigmoid);
  Rng rng(cfg.seed);
  DenseNet net = build_net(dims, acts, rng);
  net.frozen = true;
  return net;
}

std::vector<double> sample_latent(Rng& rng, size_t dim) {
  std::vector<double> z(dim);
  for (auto& v : z) v = rng.normal();
  return z;
}

std::vector<double> generator_input(const DenseNet& gen,
                                    const std::vector<double>& z, int genre,
                                    size_t latent_dim) {
  if (z.size() != latent_dim)
    throw std::invalid_argument("generator_input: latent size mismatch");
  std::vector<double> x(gen.input_dim(), 0.0);
  for (size_t i = 0; i < latent_dim; ++i) x[i] = z[i];
  if (gen.input_dim() > latent_dim) {
    if (genre < 0 ||
        static_cast<size_t>(genre) >= gen.input_dim() - latent_dim)
      throw std::invalid_argument("generator_input: conditional net needs a genre");
    x[latent_dim + static_cast<size_t>(genre)] = 1.0;
  }
  return x;
}

Image planar_to_image(const std::vector<double>& flat, size_t size) {
  if (flat.size() != 3 * size * size)
    throw std::invalid_argument("planar_to_image: size mismatch");
  Image img(size);
  const size_t plane = size * size;
  for (size_t c = 0; c < 3; ++c)
    for (size_t p = 0; p < plane; ++p) img.data[3 * p + c] = flat[c * plane + p];
  return img;
}

std::vector<double> image_to_planar(const Image& img) {
  const size_t plane = img.size * img.size;
  std::vector<double> flat(3 * plane);
  for (size_t c = 0; c < 3; ++c)
    for (size_t p = 0; p < plane; ++p) flat[c * plane + p] = img.data[3 * p + c];
  return flat;
}

Image render(const DenseNet& gen, const std::vector<double>& z,
             size_t image_size, int genre) {
  const size_t latent = z.size();
  const std::vector<double> x = generator_input(gen, z, genre, latent);
  return planar_to_image(gen.forward(x), image_size);
}

}  // namespace coverart
