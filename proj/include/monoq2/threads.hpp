#pragma once

namespace monoq2 {

/// Applies MONOTONE_Q2_THREADS (a positive integer) as the OpenMP thread
/// cap when set. No effect in serial builds.
void apply_thread_cap_from_env();

/// Threads the parallel kernels will use (1 in serial builds).
int max_threads();

}  // namespace monoq2
