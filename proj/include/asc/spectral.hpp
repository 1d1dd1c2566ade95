#pragma once

#include "asc/similarity.hpp"

#include <Eigen/Dense>
#include <vector>

namespace asc {

enum class LaplacianKind { unnormalized, symmetric, random_walk };

/// Node degrees d_i = sum_j w_ij.
Eigen::VectorXd degree_vector(const Eigen::MatrixXd& w);

/// L = D - W, or D^{-1/2} L D^{-1/2} for the normalized kinds. random_walk
/// spectra are obtained from the symmetric operator, so both normalized kinds
/// assemble the same matrix here. Zero-degree nodes get a 0 scaling entry.
Eigen::MatrixXd laplacian(const Eigen::MatrixXd& w, const Eigen::VectorXd& degrees,
                          LaplacianKind kind);

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // column j pairs with eigenvalue j
    LaplacianKind kind = LaplacianKind::random_walk;
    int zero_multiplicity = 0;
    Eigen::VectorXd degrees;
};

/// Smallest `count` eigenpairs of the chosen Laplacian of W. For random_walk
/// the symmetric problem is solved and eigenvectors are mapped back through
/// D^{-1/2}, which solves the generalized problem L v = lambda D v. Signs are
/// canonicalized (first non-negligible component positive) so the result is
/// bitwise reproducible.
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& w, LaplacianKind kind,
                                     int count);

struct EigengapReport {
    std::vector<double> eigenvalues; // window kept after dropping near-zeros
    std::vector<double> gaps;        // gaps[i] = eigenvalues[i+1] - eigenvalues[i]
    std::vector<int> candidates;     // suggested cluster counts, ascending
    int window = 0;
    int zeros_removed = 0;
};

/// Drops near-zero eigenvalues, inspects the `window` smallest remaining ones
/// and flags spike gaps (gap > mean + 2*stdev) as candidate cluster counts;
/// falls back to the single largest gap when no spike fires.
EigengapReport eigengap_candidates(const SpectralDecomposition& dec, int window);

struct Embedding {
    Eigen::MatrixXd coordinates; // n x k, row i = new coordinates of sample i
    int k = 0;
};

/// Takes eigenvectors e_2..e_{k+1}, skipping the trivial first one.
Embedding spectral_embedding(const SpectralDecomposition& dec, int k,
                             bool row_normalize = false);

} // namespace asc
