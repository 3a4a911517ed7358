#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace rrb {

namespace detail {
inline std::atomic<unsigned> &thread_cap()
{
  static std::atomic<unsigned> cap{std::max(1u, std::thread::hardware_concurrency())};
  return cap;
}
} // namespace detail

/// Caps the worker threads used by verification loops and enumeration (minimum 1).
inline void set_max_threads(unsigned n) { detail::thread_cap() = std::max(1u, n); }
inline unsigned max_threads() { return detail::thread_cap(); }

/// Runs fn(i) for i in [0, count) and returns the smallest i with a non-empty result,
/// together with that result. The answer does not depend on the number of threads.
template <class Fn>
auto first_failure(std::size_t count, Fn &&fn)
    -> std::optional<std::pair<std::size_t, typename std::invoke_result_t<Fn &, std::size_t>::value_type>>
{
  using Value = typename std::invoke_result_t<Fn &, std::size_t>::value_type;
  using Result = std::optional<std::pair<std::size_t, Value>>;

  unsigned threads = std::min<std::size_t>(max_threads(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto r = fn(i))
        return Result{{i, std::move(*r)}};
    return std::nullopt;
  }

  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::vector<Result> found(threads);
  std::vector<std::thread> pool;
  std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
      for (std::size_t i = lo; i < hi && i < best.load(); ++i) {
        if (auto r = fn(i)) {
          found[t] = Result{{i, std::move(*r)}};
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    });
  }
  for (auto &th : pool)
    th.join();
  Result out;
  for (auto &f : found)
    if (f && (!out || f->first < out->first))
      out = std::move(f);
  return out;
}

/// out[i] = fn(i) for i in [0, count), computed on up to max_threads() workers.
template <class Fn>
auto parallel_map(std::size_t count, Fn &&fn) -> std::vector<std::invoke_result_t<Fn &, std::size_t>>
{
  std::vector<std::invoke_result_t<Fn &, std::size_t>> out(count);
  unsigned threads = std::min<std::size_t>(max_threads(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;)
        out[i] = fn(i);
    });
  for (auto &th : pool)
    th.join();
  return out;
}

} // namespace rrb
