#pragma once

#include "asc/spectral.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace asc {

enum class ClusterMethod { kmeans, kmedians, kmedoids };

ClusterMethod cluster_method_from_string(const std::string& name);
std::string to_string(ClusterMethod m);

struct ClusterAssignment {
    std::vector<int> labels; // per-sample cluster index in [0,k)
    Eigen::MatrixXd centers; // k x dim centroids / medians / medoid rows
    int k = 0;
    ClusterMethod method = ClusterMethod::kmeans;
    double objective = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
    std::vector<double> objective_trace; // non-increasing
};

/// Lloyd's algorithm, squared-Euclidean objective, greedy farthest-point
/// seeding (seeded random first center), best of `restarts` runs. Empty
/// clusters are reseeded from the point farthest from its center.
ClusterAssignment kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                         int max_iter = 100, int restarts = 10);

/// Same loop with per-coordinate medians and an L1 objective.
ClusterAssignment kmedians(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                           int max_iter = 100, int restarts = 10);

/// Hill-climbing medoid search: seeded random initial medoids, then
/// best-improvement single swaps over all (medoid, non-medoid) pairs until
/// no swap lowers the sum of Euclidean distances to the nearest medoid.
ClusterAssignment kmedoids_hill_climb(const Eigen::MatrixXd& points, int k,
                                      std::uint64_t seed, int max_iter = 1000);

struct KSelectionRow {
    int k = 0;
    double gap = 0.0;
    double silhouette = 0.0;
    double score = 0.0;
};

struct KSelectionReport {
    std::vector<int> candidates;
    std::vector<KSelectionRow> rows;
    int chosen_k = 0;
    bool degenerate = false; // every candidate clustering singleton-dominated
};

struct SelectKOptions {
    ClusterMethod method = ClusterMethod::kmeans;
    std::uint64_t seed = 0;
    int restarts = 10;
    bool row_normalize = false;
    // Score each candidate with the per-cluster gap/separation expression
    // (minimize the max) instead of normalized-gap + mean silhouette.
    bool literal_score = false;
};

/// Evaluates every eigengap candidate k: builds the (k-1)-dimensional
/// embedding spanned by e_2..e_k, clusters it, and scores gap + clustering
/// quality. Returns the report and the winning assignment.
std::pair<KSelectionReport, ClusterAssignment>
select_k(const SpectralDecomposition& dec, const EigengapReport& gaps,
         const SelectKOptions& opts = {});

} // namespace asc
