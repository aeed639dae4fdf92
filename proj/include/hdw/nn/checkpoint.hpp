#pragma once

#include <filesystem>
#include <iosfwd>

#include "hdw/nn/dense_net.hpp"

namespace hdw::nn {

// Network checkpoint, version 1. All integers and floats little-endian:
//
//   char[4]  magic "HDWN"
//   u32      version (1)
//   u32      layer count L
//   u32[L+1] layer sizes, input first
//   u8[L]    activation codes (0 identity, 1 relu, 2 sigmoid, 3 softmax)
//   f64      softmax temperature
//   u64      parameter count P
//   f64[P]   parameters in DenseNet layout

inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_network(std::ostream& os, const DenseNet& net);
DenseNet read_network(std::istream& is);

void save_network(const std::filesystem::path& path, const DenseNet& net);
DenseNet load_network(const std::filesystem::path& path);

}  // namespace hdw::nn
