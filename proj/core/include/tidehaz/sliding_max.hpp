#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tidehaz {

/// Windowed maxima over a series with a monotonic index deque.
///
/// out[i] = max(values[i], ..., values[i + window - 1]) for
/// i in [0, values.size() - window]. Runs in O(values.size()) regardless of
/// the window length. window must be in [1, values.size()].
std::vector<double> sliding_window_max(std::span<const double> values,
                                       std::size_t window);

/// Same as sliding_window_max but writes into out, which must hold
/// values.size() - window + 1 elements. Reuses the caller's scratch buffer
/// for the deque.
void sliding_window_max(std::span<const double> values, std::size_t window,
                        std::span<double> out,
                        std::vector<std::size_t>& scratch);

} // namespace tidehaz
