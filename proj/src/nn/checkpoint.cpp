#include "hdw/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "hdw/common/errors.hpp"

namespace hdw::nn {

namespace {

template <typename T>
void put(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw FormatError("network checkpoint truncated");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

constexpr char kMagic[4] = {'H', 'D', 'W', 'N'};

}  // namespace

void write_network(std::ostream& os, const DenseNet& net) {
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(net.layer_count()));
  for (int s : net.layer_sizes()) put<std::uint32_t>(os, static_cast<std::uint32_t>(s));
  for (auto a : net.activations()) put<std::uint8_t>(os, static_cast<std::uint8_t>(a));
  put<double>(os, net.temperature());
  const auto params = net.parameters();
  put<std::uint64_t>(os, params.size());
  for (double p : params) put<double>(os, p);
}

DenseNet read_network(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError("not a network checkpoint (bad magic)");
  const auto version = get<std::uint32_t>(is);
  if (version != kCheckpointVersion)
    throw FormatError("unsupported network checkpoint version " + std::to_string(version));
  const auto layers = get<std::uint32_t>(is);
  if (layers == 0 || layers > 64) throw FormatError("implausible layer count in checkpoint");
  std::vector<int> sizes;
  for (std::uint32_t i = 0; i <= layers; ++i) sizes.push_back(static_cast<int>(get<std::uint32_t>(is)));
  std::vector<Activation> acts;
  for (std::uint32_t i = 0; i < layers; ++i) {
    const auto code = get<std::uint8_t>(is);
    if (code > 3) throw FormatError("unknown activation code in checkpoint");
    acts.push_back(static_cast<Activation>(code));
  }
  const double tau = get<double>(is);
  DenseNet net(std::move(sizes), std::move(acts), tau);
  const auto count = get<std::uint64_t>(is);
  if (count != net.parameters().size())
    throw FormatError("checkpoint parameter count does not match its layer sizes");
  for (double& p : net.parameters()) p = get<double>(is);
  return net;
}

void save_network(const std::filesystem::path& path, const DenseNet& net) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  write_network(os, net);
  if (!os) throw FormatError("failed writing " + path.string());
}

DenseNet load_network(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  try {
    return read_network(is);
  } catch (const std::runtime_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace hdw::nn
