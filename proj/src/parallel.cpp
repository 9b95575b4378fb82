#include "artifact/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace artifact {

void for_each_block(std::size_t n, std::size_t block_size, int workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t n_blocks = (n + block_size - 1) / block_size;
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : static_cast<int>(hw);
  }
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), n_blocks);
  if (n_threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b)
      fn(b, b * block_size, std::min(n, (b + 1) * block_size));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    threads.emplace_back([&]() {
      while (true) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) return;
        fn(b, b * block_size, std::min(n, (b + 1) * block_size));
      }
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace artifact
