#include "coverart/dataset.h"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "coverart/csv.h"
#include "coverart/generator.h"

namespace coverart {

std::vector<CoverExample> sample_examples(const SyntheticWorld& world,
                                          size_t per_genre, Rng& rng) {
  const size_t flat = 3 * world.image_size * world.image_size;
  std::vector<size_t> need(kNumGenres, per_genre);
  size_t remaining = per_genre * kNumGenres;
  std::vector<std::vector<CoverExample>> buckets(kNumGenres);

  const size_t chunk = 256;
  std::vector<double> Z(chunk * world.latent_dim);
  std::vector<double> imgs(chunk * flat);
  size_t drawn = 0;
  const size_t max_draws = 4000 * per_genre * kNumGenres + 100000;
  while (remaining > 0) {
    if (drawn > max_draws)
      throw std::runtime_error(
          "sample_examples: rejection sampling did not terminate; "
          "world margin leaves some genre starved");
    for (auto& v : Z) v = rng.normal();
    drawn += chunk;
    world.decoder.forward_batch(Z.data(), imgs.data(), chunk, true);
    for (size_t r = 0; r < chunk && remaining > 0; ++r) {
      const std::vector<double> planar(imgs.begin() + r * flat,
                                       imgs.begin() + (r + 1) * flat);
      const std::vector<double> f = world.features(planar);
      const int g = world.genre_of(f);
      if (need[g] == 0) continue;
      if (world.top2_gap(f) < world.margin) continue;
      CoverExample ex;
      char idbuf[64];
      std::snprintf(idbuf, sizeof(idbuf), "%s_%03zu", kGenreNames[g],
                    per_genre - need[g]);
      ex.id = idbuf;
      ex.cover = planar_to_image(planar, world.image_size);
      ex.features = f;
      ex.genre = g;
      buckets[g].push_back(std::move(ex));
      --need[g];
      --remaining;
    }
  }

  std::vector<CoverExample> out;
  out.reserve(per_genre * kNumGenres);
  for (auto& b : buckets)
    for (auto& ex : b) out.push_back(std::move(ex));
  return out;
}

void write_manifest(const std::string& dir, const std::string& csv_name,
                    const std::vector<CoverExample>& examples) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "covers");
  std::vector<std::string> header = {"cover_path", "genre"};
  for (size_t i = 0; i < kNumFeatures; ++i) header.push_back(kFeatureNames[i]);
  CsvWriter csv((fs::path(dir) / csv_name).string(), header);
  for (const auto& ex : examples) {
    const std::string rel = "covers/" + ex.id;
    const std::string written =
        write_image_auto(ex.cover, (fs::path(dir) / rel).string());
    std::vector<std::string> cells = {rel + fs::path(written).extension().string(),
                                      kGenreNames[ex.genre]};
    for (size_t i = 0; i < kNumFeatures; ++i)
      cells.push_back(CsvWriter::num(feature_to_raw(i, ex.features[i])));
    csv.row(cells);
  }
}

std::vector<CoverExample> load_manifest(const std::string& csv_path) {
  namespace fs = std::filesystem;
  const CsvTable t = read_csv(csv_path);
  const fs::path base = fs::path(csv_path).parent_path();
  const size_t c_path = t.col("cover_path");
  const size_t c_genre = t.col("genre");
  std::vector<size_t> c_feat(kNumFeatures);
  for (size_t i = 0; i < kNumFeatures; ++i) c_feat[i] = t.col(kFeatureNames[i]);

  std::vector<CoverExample> out;
  out.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    CoverExample ex;
    ex.id = fs::path(r[c_path]).stem().string();
    ex.cover = read_image((base / r[c_path]).string());
    ex.genre = genre_index(r[c_genre]);
    if (ex.genre < 0)
      throw std::runtime_error("manifest has unknown genre: " + r[c_genre]);
    ex.features.resize(kNumFeatures);
    for (size_t i = 0; i < kNumFeatures; ++i)
      ex.features[i] = feature_from_raw(i, parse_double(r[c_feat[i]]));
    out.push_back(std::move(ex));
  }
  return out;
}

void split_examples(size_t n, double val_fraction, Rng rng,
                    std::vector<size_t>& train_idx,
                    std::vector<size_t>& val_idx) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  rng.shuffle_indices(idx);
  const size_t nv = static_cast<size_t>(val_fraction * static_cast<double>(n));
  val_idx.assign(idx.begin(), idx.begin() + nv);
  train_idx.assign(idx.begin() + nv, idx.end());
}

}  // namespace coverart
