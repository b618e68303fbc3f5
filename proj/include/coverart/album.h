#pragma once

#include <cstdint>
#include <vector>

#include "coverart/dense_net.h"
#include "coverart/ga.h"
#include "coverart/image_io.h"

namespace coverart {

struct AlbumResult {
  std::vector<Image> covers;
  std::vector<double> fitness;
  std::vector<std::vector<double>> predicted;
};

// One GA run per track (each with its own stream derived from master_seed);
// genre >= 0 selects the conditional one-hot input.
AlbumResult album_batch(const DenseNet& gen, const DenseNet& pred,
                        const std::vector<std::vector<double>>& tracks,
                        int genre, const GaConfig& ga, uint64_t master_seed);

}  // namespace coverart
