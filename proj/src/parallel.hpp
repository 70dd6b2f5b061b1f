#ifndef SHIFTMEASURE_SRC_PARALLEL_HPP_
#define SHIFTMEASURE_SRC_PARALLEL_HPP_

// Splitting pattern enumerations across threads. Results are combined in
// index order so output never depends on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "shiftmeasure/rational.hpp"

namespace shiftmeasure::detail {

  inline unsigned effective_threads(unsigned requested, std::size_t work) {
    unsigned t = std::max(1u, requested);
    if (work < 64) {
      return 1;
    }
    return static_cast<unsigned>(std::min<std::size_t>(t, work));
  }

  // Runs body(begin, end) over contiguous chunks of [0, total). The first
  // exception thrown by any chunk is rethrown.
  inline void for_chunks(std::size_t                                          total,
                         unsigned                                             threads,
                         std::function<void(std::size_t, std::size_t)> const& body) {
    threads = effective_threads(threads, total);
    if (threads == 1) {
      body(0, total);
      return;
    }
    std::vector<std::thread> workers;
    std::exception_ptr       error;
    std::mutex               error_mutex;
    std::size_t const        chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t const begin = t * chunk;
      std::size_t const end   = std::min(total, begin + chunk);
      if (begin >= end) {
        break;
      }
      workers.emplace_back([&, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) {
      w.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

  // Smallest index in [0, total) where `fails` holds.
  inline std::optional<std::size_t> first_failure(std::size_t                              total,
                                                  unsigned                                 threads,
                                                  std::function<bool(std::size_t)> const& fails) {
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    for_chunks(total, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end && i < best.load(); ++i) {
        if (fails(i)) {
          std::size_t current = best.load();
          while (i < current && !best.compare_exchange_weak(current, i)) {
          }
          return;
        }
      }
    });
    if (best.load() == std::numeric_limits<std::size_t>::max()) {
      return std::nullopt;
    }
    return best.load();
  }

  inline Rational parallel_sum(std::size_t                                total,
                               unsigned                                   threads,
                               std::function<Rational(std::size_t)> const& term) {
    threads = effective_threads(threads, total);
    std::size_t const     chunk = (total + threads - 1) / threads;
    std::vector<Rational> partial(threads);
    for_chunks(total, threads, [&](std::size_t begin, std::size_t end) {
      Rational acc = 0;
      for (std::size_t i = begin; i < end; ++i) {
        acc += term(i);
      }
      partial[begin / chunk] = acc;
    });
    Rational total_sum = 0;
    for (auto const& p : partial) {
      total_sum += p;
    }
    return total_sum;
  }

}  // namespace shiftmeasure::detail

#endif  // SHIFTMEASURE_SRC_PARALLEL_HPP_
