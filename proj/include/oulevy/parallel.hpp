#pragma once

#include <functional>

namespace oulevy {

// Replica-parallel dispatch.  Work items write into preallocated per-replica
// slots and aggregation happens serially afterwards, so results are identical
// bit-for-bit whether the loop runs on one thread or many.  OU_LEVY_THREADS
// caps the worker count; 1 forces the serial reference path.
int max_threads();

enum class ExecMode { parallel, serial };

void parallel_for(int n, const std::function<void(int)>& body,
                  ExecMode mode = ExecMode::parallel);

}  // namespace oulevy
