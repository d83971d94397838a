#pragma once

namespace affexp {

/// Selects between the serial reference loop and the OpenMP loop of a kernel.
/// Both produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Execution { serial, parallel };

/// Sets the OpenMP thread count used by parallel kernels (0 = runtime default).
void set_worker_count(int workers);

}  // namespace affexp
