#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace asc {

/// n x p matrix of per-sample numeric features.
struct NumericDataset {
    std::vector<std::string> samples;
    std::vector<std::string> features;
    Eigen::MatrixXd values; // n x p, all entries finite

    int n() const { return static_cast<int>(values.rows()); }
    int p() const { return static_cast<int>(values.cols()); }
};

/// n x q matrix of raw term frequencies over a fixed lexicon.
struct TextDataset {
    std::vector<std::string> samples;
    std::vector<std::string> lexicon;
    Eigen::MatrixXd counts; // n x q, non-negative integers stored as doubles

    int n() const { return static_cast<int>(counts.rows()); }
    int q() const { return static_cast<int>(counts.cols()); }
};

/// Must-link set M and cannot-link set C as sample index sets, M and C disjoint.
struct ConstraintSets {
    std::vector<int> must_link;
    std::vector<int> cannot_link;
};

/// Validates disjointness and index range; throws InputError on violation.
void validate_constraints(const ConstraintSets& c, int n);

/// Recipe for a planted-cluster two-modality dataset.
///
/// numeric_groups / text_groups map each planted cluster to the component
/// the respective modality can distinguish; clusters sharing a group id look
/// identical under that modality. Every pair of planted clusters must differ
/// in at least one modality, otherwise the spec is infeasible.
struct SyntheticSpec {
    int n = 150;
    int clusters = 3;
    std::vector<int> numeric_groups; // size == clusters; default: identity
    std::vector<int> text_groups;    // size == clusters; default: identity
    std::uint64_t seed = 1;
    double numeric_noise = 1.0;   // lattice spacing of the within-group scatter
    double text_dispersion = 1.0; // scales Poisson rates for off-profile terms
    // Fraction of each text-identifiable cluster (one whose text topic no
    // other cluster shares) whose numeric row is replaced with diffuse noise.
    // Such points are unrecoverable for the numeric modality alone but
    // fixable once text is fused in.
    double numeric_outlier_fraction = 0.0;
};

struct SyntheticBundle {
    NumericDataset numeric;
    TextDataset text;
    std::vector<int> labels; // ground truth, for ARI scoring
    ConstraintSets constraints;
};

/// Deterministic under (spec, seed): identical inputs produce identical bundles.
SyntheticBundle generate_synthetic(const SyntheticSpec& spec);

} // namespace asc
