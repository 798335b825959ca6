#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twinsurf {

/// Caps the worker count used by grid loops. n <= 0 restores the default (1).
void set_num_threads(int n);
int num_threads();

/// Runs body(j) for j in [0, count). Each j must write only its own outputs;
/// reductions happen afterwards in a fixed order, so results do not depend on
/// the worker count.
template <class Body>
void for_each_row(int count, Body&& body) {
#ifdef _OPENMP
  const int workers = num_threads();
  if (workers > 1 && count > 1) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (int j = 0; j < count; ++j) body(j);
    return;
  }
#endif
  for (int j = 0; j < count; ++j) body(j);
}

}  // namespace twinsurf
