#include "hdw/harness/variant.hpp"

#include <string>

#include "hdw/common/errors.hpp"

namespace hdw::harness {

Variant parse_variant(std::string_view name) {
  if (name == "HDWDRL") return Variant::HDWDRL;
  if (name == "NoEAC") return Variant::NoEAC;
  if (name == "NoSWS") return Variant::NoSWS;
  if (name == "StaticWeight") return Variant::StaticWeight;
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected HDWDRL, NoEAC, NoSWS or StaticWeight)");
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::HDWDRL: return "HDWDRL";
    case Variant::NoEAC: return "NoEAC";
    case Variant::NoSWS: return "NoSWS";
    case Variant::StaticWeight: return "StaticWeight";
  }
  return "?";
}

}  // namespace hdw::harness
