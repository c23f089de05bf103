#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bhd {

// Calls fn(w) for w in [0, workers), worker 0 on the calling thread. The
// first exception (by worker index) is rethrown after all workers join.
template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0u);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  try {
    fn(0u);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Dynamic scheduling of fn(i) for i in [0, count) over up to `workers`
// threads. fn must write its result to a slot owned by i.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  run_workers(workers, [&](unsigned) {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  });
}

}  // namespace bhd
