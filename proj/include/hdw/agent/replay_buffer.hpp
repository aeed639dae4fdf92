#pragma once

#include <vector>

#include "hdw/agent/transition.hpp"
#include "hdw/common/random.hpp"

namespace hdw::agent {

/// Fixed-capacity ring; once full the oldest transition is overwritten.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }

  /// i-th oldest stored transition.
  [[nodiscard]] const Transition& at(std::size_t i) const;

  /// Uniform sample with replacement.
  [[nodiscard]] std::vector<const Transition*> sample(std::size_t count, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::vector<Transition> items_;
  std::size_t head_ = 0;  // next slot to overwrite once full
};

}  // namespace hdw::agent
