// Execution policy for the OpenMP kernels.  Every parallel kernel has a serial
// twin used as reference in tests and benchmarks; LOGCHOW_THREADS caps the
// thread count, LOGCHOW_SERIAL forces the serial path globally.
#pragma once

#include <functional>

namespace logchow {

enum class Exec { Serial, Parallel };

// Honors LOGCHOW_SERIAL.
Exec defaultExec();

// min(omp_get_max_threads(), LOGCHOW_THREADS); 1 without OpenMP.
int threadCount();

// Runs f(i) for i in [0, n).  Parallel iterations must be independent.
void parallelFor(int n, const std::function<void(int)> &f, Exec ex);

} // namespace logchow
