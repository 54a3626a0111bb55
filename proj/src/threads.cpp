#include "dlab/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dlab::threads {

namespace {
int g_cap = 0;  // 0: uncapped
}

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (g_cap > 0) n = std::min(n, g_cap);
    return std::max(1, n);
#else
    return 1;
#endif
}

void init_from_env() {
    const char* env = std::getenv("DISPERSION_LAB_THREADS");
    if (!env) return;
    try {
        g_cap = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        g_cap = 0;
    }
#ifdef _OPENMP
    if (g_cap > 0 && g_cap < omp_get_max_threads()) omp_set_num_threads(g_cap);
#endif
}

}  // namespace dlab::threads
