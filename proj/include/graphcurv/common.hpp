#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace graphcurv {

/// Invalid input: malformed documents, violated graph invariants, bad parameters.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: iteration caps exceeded, singular blocks, non-convergence.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by operations that require a connected graph. Carries the vertex
/// components found by BFS so callers can report them.
class DisconnectedGraphError : public ValidationError {
 public:
  DisconnectedGraphError(const std::string& msg, std::vector<std::vector<int>> components)
      : ValidationError(msg), components_(std::move(components)) {}

  const std::vector<std::vector<int>>& components() const noexcept { return components_; }

 private:
  std::vector<std::vector<int>> components_;
};

/// One real value per vertex, indexed like the graph's vertex list.
using ScalarField = std::vector<double>;

inline void require_field_size(const ScalarField& f, int vertexCount, const char* what) {
  if (static_cast<int>(f.size()) != vertexCount) {
    throw ValidationError(std::string(what) + ": field has " + std::to_string(f.size()) +
                          " entries but the graph has " + std::to_string(vertexCount) +
                          " vertices");
  }
}

namespace rng {

// mt19937_64 output is bit-exact across platforms; the mappings below avoid
// std::*_distribution, whose streams are implementation-defined.
inline double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * u01(eng);
}

inline double normal(std::mt19937_64& eng) {
  double u1 = u01(eng);
  while (u1 <= 0.0) u1 = u01(eng);
  const double u2 = u01(eng);
  constexpr double twoPi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(twoPi * u2);
}

inline ScalarField normal_field(int count, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  ScalarField f(static_cast<std::size_t>(count));
  for (auto& v : f) v = normal(eng);
  return f;
}

}  // namespace rng

inline int default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(0), ..., fn(count-1) on up to `workers` threads. fn must write its
/// result into a per-index slot; the first exception is rethrown on the caller.
inline void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int nThreads = std::min(std::max(workers, 1), count);
  if (nThreads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr firstError = nullptr;
  std::mutex errorLock;
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> hold(errorLock);
        if (!firstError) firstError = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nThreads));
  for (int i = 0; i < nThreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (firstError) std::rethrow_exception(firstError);
}

}  // namespace graphcurv
