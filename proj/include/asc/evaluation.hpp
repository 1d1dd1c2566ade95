#pragma once

#include "asc/dataset.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace asc {

struct SilhouetteResult {
    Eigen::VectorXd per_sample;
    double mean = 0.0;
};

/// Standard silhouette with Euclidean distances; singleton clusters score 0,
/// as does a sample with a == b == 0.
SilhouetteResult silhouette(const Eigen::MatrixXd& points,
                            const std::vector<int>& labels);

/// Mean distance of each point to its own center, divided by the mean
/// pairwise distance between centers. Lower is tighter.
double intra_inter_ratio(const Eigen::MatrixXd& points,
                         const std::vector<int>& labels,
                         const Eigen::MatrixXd& centers);

/// (between dispersion / (k-1)) / (within dispersion / (n-k)), trace form.
double calinski_harabasz(const Eigen::MatrixXd& points,
                         const std::vector<int>& labels);

/// Mean over clusters of max_{j!=i} (s_i+s_j)/d(c_i,c_j). Lower is better.
double davies_bouldin(const Eigen::MatrixXd& points,
                      const std::vector<int>& labels);

/// Adjusted Rand index from the contingency table; 1 iff the partitions
/// agree up to relabeling.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

struct MetricBundle {
    double silhouette = 0.0;
    double intra_inter = 0.0;
    double calinski_harabasz = 0.0;
    double davies_bouldin = 0.0;
};

MetricBundle metric_bundle(const Eigen::MatrixXd& points,
                           const std::vector<int>& labels,
                           const Eigen::MatrixXd& centers);

struct ClusterProfile {
    std::vector<std::string> terms;
    Eigen::MatrixXd ratios; // terms x clusters; rows sum to 1 where the term occurs
    std::vector<int> dominant; // per-term argmax cluster (lowest index on ties)
};

/// Per term: cluster-summed counts over the grand total of that term.
ClusterProfile word_frequency_ratio(const TextDataset& text,
                                    const std::vector<int>& labels, int k);

struct DatasetSummary {
    std::vector<std::string> features;
    Eigen::VectorXd mean;
    Eigen::VectorXd sd; // n-1 divisor
    Eigen::VectorXd cv; // 100 * sd / mean, NaN where the mean is zero
};

DatasetSummary dataset_summary(const NumericDataset& data);

} // namespace asc
