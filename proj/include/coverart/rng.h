#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace coverart {

uint64_t splitmix64(uint64_t& state);

// Combine a seed with a tag to derive the seed of an independent stream.
uint64_t derive_seed(uint64_t seed, uint64_t tag);
uint64_t hash_tag(const char* name);

// xoshiro256++ seeded through splitmix64.  Hand-rolled so that every draw is
// bit-identical across platforms and standard library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  // Uniform double in (0, 1]; never returns 0 so log() is always safe.
  double uniform01();

  // Standard normal via Box-Muller; caches the second value of each pair.
  double normal();
  double normal(double mean, double stddev);

  // Uniform integer in [0, bound) without modulo bias.
  uint64_t below(uint64_t bound);

  // k distinct indices from [0, n), in ascending order.
  std::vector<size_t> pick_distinct(size_t n, size_t k);

  void shuffle_indices(std::vector<size_t>& v);

  // Independent generator derived from this one's seed and a tag.
  Rng stream(uint64_t tag) const;
  Rng stream(const char* name) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t s_[4];
  uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace coverart
