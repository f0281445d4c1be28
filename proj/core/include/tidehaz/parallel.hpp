#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tidehaz {

/// Worker cap for table and grid construction. threads == 0 means
/// std::thread::hardware_concurrency().
struct Exec {
  unsigned threads = 0;

  unsigned resolved() const noexcept {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
  }
};

/// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk) on
/// each, one worker per chunk. Returns the number of chunks. Callers merge
/// per-chunk results by chunk index, so output never depends on timing.
template <class Fn>
std::size_t parallel_chunks(std::size_t n, Exec exec, Fn&& fn) {
  if (n == 0) return 0;
  std::size_t workers = std::min<std::size_t>(exec.resolved(), n);
  if (workers <= 1) {
    fn(std::size_t{0}, n, std::size_t{0});
    return 1;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t base = n / workers;
  std::size_t extra = n % workers;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < workers; ++c) {
    std::size_t end = begin + base + (c < extra ? 1 : 0);
    pool.emplace_back([&, begin, end, c] {
      try {
        fn(begin, end, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return workers;
}

} // namespace tidehaz
