#include "tidehaz/sliding_max.hpp"

#include <stdexcept>

namespace tidehaz {

void sliding_window_max(std::span<const double> values, std::size_t window,
                        std::span<double> out,
                        std::vector<std::size_t>& scratch) {
  if (window == 0 || window > values.size())
    throw std::invalid_argument("sliding_window_max: window must be in [1, n]");
  const std::size_t n_out = values.size() - window + 1;
  if (out.size() != n_out)
    throw std::invalid_argument("sliding_window_max: output size mismatch");

  // Ring of candidate indices with strictly decreasing values; the front is
  // the current maximum. At most `window` entries are live at once.
  scratch.resize(window);
  std::size_t head = 0;
  std::size_t size = 0;
  auto at = [&](std::size_t k) -> std::size_t& {
    std::size_t pos = head + k;
    if (pos >= window) pos -= window;
    return scratch[pos];
  };

  for (std::size_t i = 0; i < values.size(); ++i) {
    if (size > 0 && i >= window && at(0) <= i - window) {
      head = head + 1 == window ? 0 : head + 1;
      --size;
    }
    const double v = values[i];
    while (size > 0 && values[at(size - 1)] <= v) --size;
    at(size) = i;
    ++size;
    if (i + 1 >= window) out[i + 1 - window] = values[at(0)];
  }
}

std::vector<double> sliding_window_max(std::span<const double> values,
                                       std::size_t window) {
  if (window == 0 || window > values.size())
    throw std::invalid_argument("sliding_window_max: window must be in [1, n]");
  std::vector<double> out(values.size() - window + 1);
  std::vector<std::size_t> scratch;
  sliding_window_max(values, window, out, scratch);
  return out;
}

} // namespace tidehaz
