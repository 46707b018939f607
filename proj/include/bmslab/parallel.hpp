#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bmslab {

// Resolves a job-count request: nonpositive means one worker per hardware
// thread.
inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Splits [0, total) into contiguous chunks and runs body(chunk_index, begin,
// end) on worker threads. Exceptions from workers are rethrown on the caller.
inline void parallel_chunks(long total, int jobs,
                            const std::function<void(int, long, long)>& body) {
  jobs = std::min<long>(resolve_jobs(jobs), std::max<long>(total, 1));
  if (jobs <= 1 || total <= 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
  const long step = (total + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    const long b = static_cast<long>(t) * step;
    const long e = std::min(total, b + step);
    if (b >= e) break;
    pool.emplace_back([&body, &errors, t, b, e]() {
      try {
        body(t, b, e);
      } catch (...) {
        errors[static_cast<size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace bmslab
