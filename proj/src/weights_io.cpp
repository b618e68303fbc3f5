#include "coverart/weights_io.h"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace coverart {

static const char kMagic[4] = {'C', 'A', 'W', '1'};

// Header length and all doubles are stored little-endian; this code targets
// little-endian hosts and checks the assumption once.
static void require_little_endian() {
  const uint16_t probe = 1;
  unsigned char b;
  std::memcpy(&b, &probe, 1);
  if (b != 1) throw std::runtime_error("weights files require a little-endian host");
}

void save_net(const DenseNet& net, const std::string& path,
              const nlohmann::json& metadata) {
  require_little_endian();
  nlohmann::json header;
  header["layers"] = nlohmann::json::array();
  for (const auto& l : net.layers)
    header["layers"].push_back({{"in", l.in}, {"out", l.out}, {"act", act_name(l.act)}});
  header["frozen"] = net.frozen;
  header["metadata"] = metadata;
  const std::string hs = header.dump();

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(kMagic, 4);
  const uint64_t hlen = hs.size();
  f.write(reinterpret_cast<const char*>(&hlen), 8);
  f.write(hs.data(), static_cast<std::streamsize>(hs.size()));
  for (const auto& l : net.layers) {
    f.write(reinterpret_cast<const char*>(l.W.data()),
            static_cast<std::streamsize>(l.W.size() * 8));
    f.write(reinterpret_cast<const char*>(l.b.data()),
            static_cast<std::streamsize>(l.b.size() * 8));
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

LoadedNet load_net(const std::string& path) {
  require_little_endian();
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad weights file magic: " + path);
  uint64_t hlen = 0;
  f.read(reinterpret_cast<char*>(&hlen), 8);
  std::string hs(hlen, '\0');
  f.read(hs.data(), static_cast<std::streamsize>(hlen));
  if (!f) throw std::runtime_error("truncated weights header: " + path);
  const nlohmann::json header = nlohmann::json::parse(hs);

  LoadedNet out;
  out.metadata = header.value("metadata", nlohmann::json::object());
  out.net.frozen = header.value("frozen", false);
  for (const auto& jl : header.at("layers")) {
    Layer l;
    l.in = jl.at("in").get<size_t>();
    l.out = jl.at("out").get<size_t>();
    l.act = act_from_name(jl.at("act").get<std::string>());
    l.W.resize(l.out * l.in);
    l.b.resize(l.out);
    f.read(reinterpret_cast<char*>(l.W.data()),
           static_cast<std::streamsize>(l.W.size() * 8));
    f.read(reinterpret_cast<char*>(l.b.data()),
           static_cast<std::streamsize>(l.b.size() * 8));
    out.net.layers.push_back(std::move(l));
  }
  if (!f) throw std::runtime_error("truncated weights data: " + path);
  return out;
}

}  // namespace coverart
