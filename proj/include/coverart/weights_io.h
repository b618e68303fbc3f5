#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "coverart/dense_net.h"

namespace coverart {

// Container file for network weights: magic "CAW1", a little-endian uint64
// header length, a JSON header describing layer shapes / activations /
// metadata, then all parameters as raw little-endian doubles (per layer:
// W row-major, then b).  Round-trips bitwise.
void save_net(const DenseNet& net, const std::string& path,
              const nlohmann::json& metadata = nlohmann::json::object());

struct LoadedNet {
  DenseNet net;
  nlohmann::json metadata;
};

LoadedNet load_net(const std::string& path);

}  // namespace coverart
