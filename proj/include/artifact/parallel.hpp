#pragma once

#include <cstddef>
#include <functional>

namespace artifact {

// Runs fn(block_index, begin, end) over fixed-size blocks of [0, n).
// The block decomposition depends only on n and block_size, never on the
// worker count, so per-block results merged in block-index order are
// reproducible at any parallelism level.
void for_each_block(std::size_t n, std::size_t block_size, int workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace artifact
