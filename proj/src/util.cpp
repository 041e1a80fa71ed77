#include "robosym/util.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>
#include <vector>

#include "robosym/error.hpp"

namespace robosym {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::inconsistent_generators: return "inconsistent-generators";
    case ErrorCode::inconsistent_action: return "inconsistent-action";
    case ErrorCode::unsupported_group: return "unsupported-group";
    case ErrorCode::decomposition_failure: return "decomposition-failure";
    case ErrorCode::missing_branch_spec: return "missing-branch-spec";
    case ErrorCode::invalid_permutation: return "invalid-permutation";
    case ErrorCode::missing_metadata: return "missing-metadata";
    case ErrorCode::precondition_violation: return "precondition-violation";
    case ErrorCode::equivariance_violation: return "equivariance-violation";
    case ErrorCode::schema_error: return "schema-error";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::corrupt_record: return "corrupt-record";
    case ErrorCode::undefined_com: return "undefined-com";
    case ErrorCode::io_error: return "io-error";
  }
  return "error";
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

int Rng::uniform_int(int n) {
  require(n > 0, ErrorCode::invalid_argument, "uniform_int needs n > 0");
  // Rejection sampling keeps the distribution exact and the stream portable.
  uint64_t limit = UINT64_MAX - UINT64_MAX % static_cast<uint64_t>(n);
  uint64_t draw = 0;
  do {
    draw = bits();
  } while (draw >= limit);
  return static_cast<int>(draw % static_cast<uint64_t>(n));
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = uniform_int(i + 1);
    std::swap(idx[i], idx[j]);
  }
  return idx;
}

int configured_thread_count() {
  const char* env = std::getenv("MORPHOSYM_THREADS");
  if (env != nullptr) {
    int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int threads = configured_thread_count();
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace robosym
