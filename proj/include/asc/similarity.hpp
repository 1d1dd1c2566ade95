#pragma once

#include "asc/dataset.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace asc {

struct SimilarityMatrix {
    enum class Kind { numeric, text, fused };
    Eigen::MatrixXd values; // symmetric, non-negative, finite
    Kind kind = Kind::fused;
    double lambda = -1.0; // set iff kind == fused

    int n() const { return static_cast<int>(values.rows()); }
};

/// Sample covariance of a numeric dataset plus its (pseudo-)inverse.
struct CovarianceModel {
    Eigen::MatrixXd sigma;
    Eigen::MatrixXd sigma_inv;
    int rank = 0;
};

/// Covariance with divisor n-1; falls back to the Moore-Penrose pseudo-inverse
/// when the covariance is rank deficient. Throws NumericError when the data
/// has no variance at all.
CovarianceModel covariance_model(const NumericDataset& data);

/// Covariance-whitened distance between two feature vectors.
double mahalanobis(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                   const CovarianceModel& model);

/// Similarity maxDist/dist over all pairs. The diagonal is 0; duplicate rows
/// (zero distance off the diagonal) are capped at maxDist/eps where eps is the
/// smallest non-zero pairwise distance, so the matrix stays finite and
/// duplicates rank at least as high as every other pair.
SimilarityMatrix numeric_similarity_matrix(const NumericDataset& data);

/// Per-term log(n_docs / docs_containing_term); 0 for ubiquitous and unused terms.
Eigen::VectorXd inverse_document_frequency(const TextDataset& text);

/// Damped weights log(1 + count) * idf, one row per document.
Eigen::MatrixXd tfidf_weights(const TextDataset& text);

/// Cosine similarity of TF-IDF rows; all-zero rows score 0 against everything.
SimilarityMatrix text_similarity_matrix(const TextDataset& text);

/// Min-max rescales off-diagonal entries to [0,1]; diagonal forced to 0.
/// Applied to the numeric matrix before fusion so lambda mixes like scales.
SimilarityMatrix rescale_offdiagonal(const SimilarityMatrix& w);

/// Element-wise lambda*numeric + (1-lambda)*text.
SimilarityMatrix fuse_similarity(const SimilarityMatrix& numeric,
                                 const SimilarityMatrix& text, double lambda);

struct LambdaGridRow {
    double lambda = 0.0;
    bool feasible = false;
    double satisfied_fraction = 0.0;
    double mean_must_link = 0.0;
    double mean_cannot_link = 0.0;
};

struct LambdaSolution {
    double lambda = 0.0;
    double objective = 0.0; // lambda * (1 - lambda)
    double satisfied_fraction = 0.0;
    std::vector<LambdaGridRow> grid;
};

struct LambdaOptions {
    double step = 0.05;
    std::size_t max_triples = 10000; // constraint triples kept after subsampling
    std::uint64_t seed = 0;
    // Compare the fused must-link similarity against the raw numeric-only
    // cannot-link similarity instead of the fused one.
    bool literal_rhs = false;
};

/// Grid search for the fusion weight. A triple (i,j,k) with i,j in M, k in C
/// is satisfied when Sim(i,j) >= Sim(i,k) and Sim(i,j) >= Sim(j,k) under the
/// fused matrix at the grid lambda. Returns the feasible lambda maximizing
/// lambda*(1-lambda); if none is feasible, the lambda with the highest
/// satisfied fraction (ties: larger objective, then smaller lambda).
LambdaSolution optimize_lambda(const SimilarityMatrix& numeric,
                               const SimilarityMatrix& text,
                               const ConstraintSets& constraints,
                               const LambdaOptions& opts = {});

} // namespace asc
