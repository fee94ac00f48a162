// Compares the OpenMP kernels against their serial reference implementations
// and reports wall times plus exact-equality checks.

#include <chrono>
#include <cstdio>

#include "exc/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

template <class F>
double time_s(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif

    std::printf("\n%-34s %10s %10s %8s %s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
                "equal");

    {
        exc::Jet a, b;
        double ts = time_s([&] { a = exc::dyck_jets_serial(600, 2, 2); });
        double tp = time_s([&] { b = exc::dyck_jets(600, 2, 2); });
        std::printf("%-34s %10.3f %10.3f %8.2f %s\n", "dyck_jets n=600 M=2 K=2", ts, tp, ts / tp,
                    a == b ? "yes" : "NO");
    }
    {
        exc::McMomentSums a, b;
        double ts = time_s([&] { a = exc::mc_moment_sums_serial(1024, 20000, 2, 42); });
        double tp = time_s([&] { b = exc::mc_moment_sums(1024, 20000, 2, 42, 0); });
        bool eq = a.sum == b.sum && a.sum_sq == b.sum_sq;
        std::printf("%-34s %10.3f %10.3f %8.2f %s\n", "mc_moment_sums n=1024 s=20000", ts, tp,
                    ts / tp, eq ? "yes" : "NO");
    }
    return 0;
}
