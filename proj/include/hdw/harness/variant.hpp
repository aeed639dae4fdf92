#pragma once

#include <string_view>

namespace hdw::harness {

enum class Variant {
  HDWDRL,        // episode actor-critic + step net, fused
  NoEAC,         // episode weight pinned at [0.5, 0.5]; step net still fused in
  NoSWS,         // delta = 0: pure episode weight, no step net
  StaticWeight,  // w = [0.5, 0.5] throughout, no weighting layer at all
};

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant v);

[[nodiscard]] constexpr bool uses_episode_policy(Variant v) {
  return v == Variant::HDWDRL || v == Variant::NoSWS;
}
[[nodiscard]] constexpr bool uses_step_net(Variant v) {
  return v == Variant::HDWDRL || v == Variant::NoEAC;
}

}  // namespace hdw::harness
