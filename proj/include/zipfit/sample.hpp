#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zipfit {

// N >= 1 positive integer observations, in the order given.
class Sample {
 public:
  // Throws std::invalid_argument on an empty set or a value < 1.
  explicit Sample(std::vector<std::int64_t> values);

  std::span<const std::int64_t> values() const { return values_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  std::int64_t max() const { return max_; }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<std::int64_t> values_;
  std::int64_t max_ = 0;
};

}  // namespace zipfit
