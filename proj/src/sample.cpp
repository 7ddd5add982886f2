#include "zipfit/sample.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace zipfit {

Sample::Sample(std::vector<std::int64_t> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("sample must contain at least one observation");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 1) {
      throw std::invalid_argument("observation " + std::to_string(i) + " is " +
                                  std::to_string(values_[i]) +
                                  ", not a positive integer");
    }
  }
  max_ = *std::max_element(values_.begin(), values_.end());
}

}  // namespace zipfit
