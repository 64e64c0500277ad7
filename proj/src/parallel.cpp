#include "logchow/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace logchow {

Exec defaultExec() {
  return std::getenv("LOGCHOW_SERIAL") ? Exec::Serial : Exec::Parallel;
}

int threadCount() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char *cap = std::getenv("LOGCHOW_THREADS")) {
    int c = std::atoi(cap);
    if (c >= 1 && c < n)
      n = c;
  }
  return n;
}

void parallelFor(int n, const std::function<void(int)> &f, Exec ex) {
  if (ex == Exec::Serial || threadCount() == 1) {
    for (int i = 0; i < n; ++i)
      f(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threadCount())
  for (int i = 0; i < n; ++i)
    f(i);
#else
  for (int i = 0; i < n; ++i)
    f(i);
#endif
}

} // namespace logchow
