#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "smd/assembly.hpp"
#include "smd/error.hpp"

namespace smd {

template <class T>
struct Outcome {
  std::optional<T> value;
  std::optional<Error> error;

  bool ok() const noexcept { return value.has_value(); }
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results are stored
// by index, so their order never depends on scheduling.
template <class T, class Fn>
std::vector<Outcome<T>> parallel_map(std::size_t count, unsigned jobs, Fn&& fn) {
  std::vector<Outcome<T>> results(count);
  auto run_one = [&](std::size_t i) {
    try {
      results[i].value = fn(i);
    } catch (const Error& e) {
      results[i].error = e;
    } catch (const std::exception& e) {
      results[i].error = Error(ErrorCode::MalformedInput, e.what());
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) run_one(i);
    });
  }
  pool.clear();
  return results;
}

inline std::vector<Outcome<std::string>> convert_batch(const std::vector<JointSequence>& motions,
                                                       const SmdConfig& cfg, unsigned jobs = 1) {
  return parallel_map<std::string>(motions.size(), jobs, [&](std::size_t i) { return convert(motions[i], cfg); });
}

}  // namespace smd
