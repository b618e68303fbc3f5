#pragma once

#include <string>
#include <vector>

#include "coverart/image_io.h"
#include "coverart/rng.h"
#include "coverart/world.h"

namespace coverart {

struct CoverExample {
  std::string id;
  Image cover;
  std::vector<double> features;  // normalized [0,1]
  int genre = -1;
};

// Rejection-sample a genre-balanced dataset: latents are drawn i.i.d., a
// draw is kept when its genre still needs examples and its top-2 genre logit
// gap clears the world margin (ambiguous covers near genre boundaries are
// discarded).
std::vector<CoverExample> sample_examples(const SyntheticWorld& world,
                                          size_t per_genre, Rng& rng);

// Manifest CSV + cover images under <dir>/covers/.  Features are stored in
// raw units (tempo in BPM, loudness in dB, the rest in [0,1]).
void write_manifest(const std::string& dir, const std::string& csv_name,
                    const std::vector<CoverExample>& examples);

std::vector<CoverExample> load_manifest(const std::string& csv_path);

// Deterministic cover-level split; returns indices of the two parts.
void split_examples(size_t n, double val_fraction, Rng rng,
                    std::vector<size_t>& train_idx,
                    std::vector<size_t>& val_idx);

}  // namespace coverart
