#include "frontprop/par.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <vector>

namespace frontprop {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = not set yet

constexpr std::size_t kBlock = 8192;

int hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}
}  // namespace

int max_threads() {
  int n = g_max_threads.load();
  return n > 0 ? n : hardware_threads();
}

void set_max_threads(int n) { g_max_threads.store(std::max(1, n)); }

std::size_t block_size() { return kBlock; }

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

void for_blocks(std::size_t n,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t blocks = block_count(n);
  if (blocks == 0) return;
  const int workers = std::min<std::size_t>(std::max(1, max_threads()), blocks);
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b)
      fn(b, b * kBlock, std::min(n, (b + 1) * kBlock));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= blocks) break;
      fn(b, b * kBlock, std::min(n, (b + 1) * kBlock));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

double sum_blocks(std::size_t n,
                  const std::function<double(std::size_t, std::size_t)>& partial) {
  std::vector<double> parts(block_count(n), 0.0);
  for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    parts[b] = partial(lo, hi);
  });
  double total = 0.0;
  for (double p : parts) total += p;  // fixed order
  return total;
}

double max_blocks(std::size_t n,
                  const std::function<double(std::size_t, std::size_t)>& partial) {
  std::vector<double> parts(block_count(n), -std::numeric_limits<double>::infinity());
  for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    parts[b] = partial(lo, hi);
  });
  double m = -std::numeric_limits<double>::infinity();
  for (double p : parts) m = std::max(m, p);
  return m;
}

}  // namespace frontprop
