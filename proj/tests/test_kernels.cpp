#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asc/kernels.hpp"
#include "oracles.hpp"

#include <random>

using namespace asc;

namespace {

Eigen::MatrixXd random_matrix(int n, int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd m(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            m(i, j) = static_cast<double>(rng() >> 11) * 0x1p-53 * 4.0 - 2.0;
    return m;
}

} // namespace

TEST_CASE("openmp kernels are bit-identical to the serial reference") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Eigen::MatrixXd x = random_matrix(40, 5, seed);
        Eigen::MatrixXd s = Eigen::MatrixXd::Identity(5, 5);
        CHECK(kernels::pairwise_mahalanobis(x, s) ==
              kernels::pairwise_mahalanobis_serial(x, s));
        CHECK(kernels::cosine_similarity(x.cwiseAbs()) ==
              kernels::cosine_similarity_serial(x.cwiseAbs()));
        CHECK(kernels::pairwise_euclidean(x) == kernels::pairwise_euclidean_serial(x));
    }
}

TEST_CASE("mahalanobis kernel matches quadratic-form oracle") {
    Eigen::MatrixXd x = random_matrix(8, 3, 11);
    Eigen::MatrixXd sigma = oracle::covariance(x);
    Eigen::MatrixXd sigma_inv = sigma.inverse();
    Eigen::MatrixXd d = kernels::pairwise_mahalanobis(x, sigma_inv);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double expected = oracle::mahalanobis(x.row(i), x.row(j), sigma_inv);
            CHECK(d(i, j) == doctest::Approx(expected).epsilon(1e-10));
        }
}

TEST_CASE("euclidean kernel matches norm oracle") {
    Eigen::MatrixXd x = random_matrix(10, 4, 12);
    Eigen::MatrixXd d = kernels::pairwise_euclidean(x);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(d(i, j) == doctest::Approx((x.row(i) - x.row(j)).norm()).epsilon(1e-12));
}

TEST_CASE("cosine kernel handles zero rows") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 4);
    x.row(0) << 1, 2, 0, 0;
    // row 1 and 2 are all-zero
    Eigen::MatrixXd s = kernels::cosine_similarity(x);
    CHECK(s(0, 0) == doctest::Approx(1.0));
    CHECK(s(0, 1) == 0.0);
    CHECK(s(1, 2) == 0.0);
    CHECK(s(1, 1) == 0.0);
}
