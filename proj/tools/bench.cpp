// Compares the serial reference kernels against their OpenMP versions and
// checks the outputs are bit-identical.

#include "asc/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

template <typename F>
double time_best_of(F&& f, int reps, Eigen::MatrixXd& out) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock_type::now();
        out = f();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 1500;
    const int p = argc > 2 ? std::atoi(argv[2]) : 8;
    const int reps = 3;

    std::mt19937_64 rng(42);
    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            x(i, j) = static_cast<double>(rng() >> 11) * 0x1p-53;
    Eigen::MatrixXd sigma_inv = Eigen::MatrixXd::Identity(p, p);

    std::printf("n=%d p=%d threads=%d\n", n, p, omp_get_max_threads());
    std::printf("%-22s %12s %12s %8s %10s\n", "kernel", "serial[ms]", "omp[ms]",
                "speedup", "identical");

    Eigen::MatrixXd a, b;
    double ts, tp;

    ts = time_best_of([&] { return asc::kernels::pairwise_mahalanobis_serial(x, sigma_inv); }, reps, a);
    tp = time_best_of([&] { return asc::kernels::pairwise_mahalanobis(x, sigma_inv); }, reps, b);
    std::printf("%-22s %12.2f %12.2f %8.2f %10s\n", "pairwise_mahalanobis", ts, tp,
                ts / tp, a == b ? "yes" : "NO");

    ts = time_best_of([&] { return asc::kernels::cosine_similarity_serial(x); }, reps, a);
    tp = time_best_of([&] { return asc::kernels::cosine_similarity(x); }, reps, b);
    std::printf("%-22s %12.2f %12.2f %8.2f %10s\n", "cosine_similarity", ts, tp,
                ts / tp, a == b ? "yes" : "NO");

    ts = time_best_of([&] { return asc::kernels::pairwise_euclidean_serial(x); }, reps, a);
    tp = time_best_of([&] { return asc::kernels::pairwise_euclidean(x); }, reps, b);
    std::printf("%-22s %12.2f %12.2f %8.2f %10s\n", "pairwise_euclidean", ts, tp,
                ts / tp, a == b ? "yes" : "NO");

    return 0;
}
