#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace vfg {

/// Runs body(chunk, lo, hi) over `chunks` contiguous slices of [0, total)
/// using up to `jobs` threads. The slicing depends only on `chunks`, so
/// callers that merge per-chunk results in chunk order get output that does
/// not depend on the worker count.
template <class Body>
void parallel_chunks(std::uint64_t total, std::size_t chunks, unsigned jobs, Body&& body) {
  if (chunks == 0) chunks = 1;
  auto bounds = [&](std::size_t c) { return total / chunks * c + std::min<std::uint64_t>(c, total % chunks); };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (jobs == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c, bounds(c), bounds(c + 1));
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += jobs) body(c, bounds(c), bounds(c + 1));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Default number of slices for a parallel enumeration.
inline std::size_t default_chunks(unsigned jobs) { return std::max<std::size_t>(1, std::size_t{4} * jobs); }

}  // namespace vfg
