#pragma once

namespace dlab::threads {

/// Number of threads the parallel kernels may use. Honors
/// DISPERSION_LAB_THREADS when set, otherwise the OpenMP default.
int max_threads();

/// Reads DISPERSION_LAB_THREADS and caps the OpenMP runtime accordingly.
/// Called once from CLI / test entry points; safe to call repeatedly.
void init_from_env();

}  // namespace dlab::threads
