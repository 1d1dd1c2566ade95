#pragma once

#include <Eigen/Dense>

namespace asc::kernels {

// All-pairs kernels behind the similarity and validation code. Each kernel
// has a serial reference used by the tests and an OpenMP version used by
// default; entries are computed independently with a fixed inner summation
// order, so both produce bit-identical matrices at any thread count.
// `asc_bench` compares their throughput.

/// Pairwise Mahalanobis distances: D(i,j) = sqrt((x_i-x_j) S (x_i-x_j)^T).
Eigen::MatrixXd pairwise_mahalanobis_serial(const Eigen::MatrixXd& x,
                                            const Eigen::MatrixXd& sigma_inv);
Eigen::MatrixXd pairwise_mahalanobis(const Eigen::MatrixXd& x,
                                     const Eigen::MatrixXd& sigma_inv);

/// Pairwise cosine similarity of matrix rows; all-zero rows get 0 everywhere.
Eigen::MatrixXd cosine_similarity_serial(const Eigen::MatrixXd& rows);
Eigen::MatrixXd cosine_similarity(const Eigen::MatrixXd& rows);

/// Pairwise Euclidean distances between matrix rows.
Eigen::MatrixXd pairwise_euclidean_serial(const Eigen::MatrixXd& rows);
Eigen::MatrixXd pairwise_euclidean(const Eigen::MatrixXd& rows);

} // namespace asc::kernels
