#pragma once

#include <cstddef>
#include <functional>

namespace modelkit {

// Thread budget: min(hardware, 8), capped by the MODELKIT_THREADS variable.
int max_threads();

// Runs f(i) for i in [0, n); work items must write to disjoint locations.
// Partitioning is static, so results are bitwise independent of the budget.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace modelkit
