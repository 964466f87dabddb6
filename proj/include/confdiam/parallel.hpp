#pragma once

namespace confdiam {

/// Execution policy for the data-parallel kernels (per-vertex curvature,
/// many-source shortest paths, area gradients). Serial is the reference
/// implementation; OpenMP must produce bit-identical results, which the
/// kernel tests assert.
enum class Exec {
    Serial,
    OpenMP,
};

/// Number of worker threads the OpenMP kernels will use.
int worker_count();

/// Caps OpenMP worker count (CLI --threads). n <= 0 restores the default.
void set_worker_count(int n);

}  // namespace confdiam
