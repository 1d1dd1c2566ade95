#include "asc/kernels.hpp"
#include "asc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace asc::kernels {

namespace {

double mahalanobis_quad(const Eigen::MatrixXd& x, const Eigen::MatrixXd& s,
                        int i, int j) {
    const int p = static_cast<int>(x.cols());
    double quad = 0.0;
    for (int a = 0; a < p; ++a) {
        double da = x(i, a) - x(j, a);
        for (int b = 0; b < p; ++b)
            quad += da * s(a, b) * (x(i, b) - x(j, b));
    }
    return quad;
}

// Exceptions must not cross an OpenMP region boundary, so the parallel kernel
// records the worst quadratic form and the check happens after the loop.
void check_quad(double worst) {
    if (worst < -1e-10)
        throw NumericError("negative Mahalanobis quadratic form: " + std::to_string(worst));
}

double dot_rows(const Eigen::MatrixXd& m, int i, int j) {
    double s = 0.0;
    for (int a = 0; a < m.cols(); ++a) s += m(i, a) * m(j, a);
    return s;
}

double euclidean_rows(const Eigen::MatrixXd& m, int i, int j) {
    double s = 0.0;
    for (int a = 0; a < m.cols(); ++a) {
        double d = m(i, a) - m(j, a);
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

Eigen::MatrixXd pairwise_mahalanobis_serial(const Eigen::MatrixXd& x,
                                            const Eigen::MatrixXd& sigma_inv) {
    const int n = static_cast<int>(x.rows());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double quad = mahalanobis_quad(x, sigma_inv, i, j);
            worst = std::min(worst, quad);
            double v = std::sqrt(quad < 0.0 ? 0.0 : quad);
            d(i, j) = v;
            d(j, i) = v;
        }
    check_quad(worst);
    return d;
}

Eigen::MatrixXd pairwise_mahalanobis(const Eigen::MatrixXd& x,
                                     const Eigen::MatrixXd& sigma_inv) {
    const int n = static_cast<int>(x.rows());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : worst)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double quad = mahalanobis_quad(x, sigma_inv, i, j);
            worst = std::min(worst, quad);
            double v = std::sqrt(quad < 0.0 ? 0.0 : quad);
            d(i, j) = v;
            d(j, i) = v;
        }
    check_quad(worst);
    return d;
}

Eigen::MatrixXd cosine_similarity_serial(const Eigen::MatrixXd& rows) {
    const int n = static_cast<int>(rows.rows());
    Eigen::VectorXd norm(n);
    for (int i = 0; i < n; ++i) norm(i) = std::sqrt(dot_rows(rows, i, i));
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = (norm(i) > 0.0 && norm(j) > 0.0)
                           ? dot_rows(rows, i, j) / (norm(i) * norm(j))
                           : 0.0;
            s(i, j) = v;
            s(j, i) = v;
        }
    return s;
}

Eigen::MatrixXd cosine_similarity(const Eigen::MatrixXd& rows) {
    const int n = static_cast<int>(rows.rows());
    Eigen::VectorXd norm(n);
    for (int i = 0; i < n; ++i) norm(i) = std::sqrt(dot_rows(rows, i, i));
    Eigen::MatrixXd s(n, n);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = (norm(i) > 0.0 && norm(j) > 0.0)
                           ? dot_rows(rows, i, j) / (norm(i) * norm(j))
                           : 0.0;
            s(i, j) = v;
            s(j, i) = v;
        }
    return s;
}

Eigen::MatrixXd pairwise_euclidean_serial(const Eigen::MatrixXd& rows) {
    const int n = static_cast<int>(rows.rows());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = euclidean_rows(rows, i, j);
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

Eigen::MatrixXd pairwise_euclidean(const Eigen::MatrixXd& rows) {
    const int n = static_cast<int>(rows.rows());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = euclidean_rows(rows, i, j);
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

} // namespace asc::kernels
