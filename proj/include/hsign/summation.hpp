#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

namespace hsign {

/// Compensated (Neumaier) accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept { add(x); return *this; }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Sum of term(i) for i in [0, n). The range is cut into a fixed number of
/// chunks that depends only on n; chunks are summed with compensation
/// (possibly on `threads` workers) and combined by a pairwise tree, so the
/// result is bit-identical for every thread count.
template <class Term>
double deterministic_sum(std::size_t n, Term term, unsigned threads = 1) {
  constexpr std::size_t kMinChunk = 4096;
  constexpr std::size_t kMaxChunks = 64;
  if (n == 0) return 0.0;
  const std::size_t chunks = std::min(kMaxChunks, (n + kMinChunk - 1) / kMinChunk);
  std::vector<double> partial(chunks, 0.0);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    CompensatedSum acc;
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    partial[c] = acc.value();
  };
  if (threads <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
  }
  for (std::size_t width = 1; width < chunks; width *= 2) {
    for (std::size_t i = 0; i + width < chunks; i += 2 * width) partial[i] += partial[i + width];
  }
  return partial[0];
}

}  // namespace hsign
