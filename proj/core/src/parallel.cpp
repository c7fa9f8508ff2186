#include "modelkit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace modelkit {

int max_threads() {
  int hw = int(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int cap = std::min(hw, 8);
  if (const char* env = std::getenv("MODELKIT_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, v);
  }
  return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const int nt = std::min<std::size_t>(std::size_t(max_threads()), n) > 0
                     ? int(std::min<std::size_t>(std::size_t(max_threads()), n))
                     : 1;
  if (nt <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(nt));
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = std::size_t(t); i < n; i += std::size_t(nt)) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace modelkit
