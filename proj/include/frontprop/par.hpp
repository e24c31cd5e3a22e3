#pragma once
#include <cstddef>
#include <functional>

namespace frontprop {

// Process-wide cap on worker threads (CLI --threads). Default: hardware.
int max_threads();
void set_max_threads(int n);

// Work is split into fixed-size blocks whose boundaries do not depend on
// the thread count, so block-indexed reductions give identical results
// for any --threads setting.
std::size_t block_size();
std::size_t block_count(std::size_t n);

// Runs fn(block, lo, hi) over [0,n) split into blocks, in parallel.
void for_blocks(std::size_t n,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Deterministic reductions: per-block partials combined in block order.
double sum_blocks(std::size_t n,
                  const std::function<double(std::size_t, std::size_t)>& partial);
double max_blocks(std::size_t n,
                  const std::function<double(std::size_t, std::size_t)>& partial);

}  // namespace frontprop
