#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace varest {

//! Number of worker threads to use when the caller passes 0.
inline unsigned default_threads()
{
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

//! Runs body(i) for i in [0, count) on up to `threads` workers.
//!
//! Indices are dealt round-robin, results must be written by index, and the
//! exception thrown by the lowest failing index (if any) is rethrown, so the
//! observable outcome does not depend on scheduling.
template<class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body)
{
  if (count == 0)
    return;
  if (threads == 0)
    threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);

  auto worker = [&](unsigned tid) {
    for (std::size_t i = tid; i < count; i += threads) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker, t);
    for (auto& th : pool)
      th.join();
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace varest
