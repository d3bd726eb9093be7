#include "kin/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace kin {

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t nw = std::min<std::size_t>(std::max(workers, 1), count);
  if (nw <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(nw);
  const std::size_t chunk = (count + nw - 1) / nw;
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] { body(begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace kin
