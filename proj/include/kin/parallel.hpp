#pragma once

#include <cstddef>
#include <functional>

namespace kin {

// Splits [0, count) into contiguous chunks and runs them on `workers`
// threads. The partition is deterministic and chunks never overlap, so
// element-wise kernels give bit-identical results for any worker count.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace kin
