#include "oulevy/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oulevy {

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("OU_LEVY_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

void parallel_for(int n, const std::function<void(int)>& body, ExecMode mode) {
    const int workers = (mode == ExecMode::serial) ? 1 : max_threads();
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers)
    for (int i = 0; i < n; ++i) body(i);
#else
    for (int i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace oulevy
