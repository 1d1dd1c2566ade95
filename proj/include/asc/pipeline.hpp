#pragma once

#include "asc/clustering.hpp"
#include "asc/dataset.hpp"
#include "asc/evaluation.hpp"
#include "asc/similarity.hpp"
#include "asc/spectral.hpp"

#include <optional>
#include <string>

namespace asc {

enum class Modality { fused, numeric, text };

Modality modality_from_string(const std::string& name);
std::string to_string(Modality m);
std::string to_string(LaplacianKind k);
LaplacianKind laplacian_kind_from_string(const std::string& name);

struct PipelineConfig {
    std::optional<double> fixed_lambda; // empty = optimize
    double lambda_step = 0.05;
    std::size_t max_triples = 10000;
    LaplacianKind laplacian = LaplacianKind::random_walk;
    int eigen_window = 20;
    ClusterMethod method = ClusterMethod::kmeans;
    int restarts = 10;
    std::uint64_t seed = 0;
    bool rescale_numeric = true;
    bool eq7_literal = false;
    bool eq10_literal = false;
    bool row_normalize = false;
    Modality modality = Modality::fused;
    bool metrics_in_numeric_space = false;
};

struct AscResult {
    ClusterAssignment assignment;
    KSelectionReport selection;
    LambdaSolution lambda;
    EigengapReport gaps;
    SpectralDecomposition decomposition;
    Embedding embedding;
    MetricBundle metrics;
};

/// Per-stage seed derived from the config seed by hashing the stage name, so
/// one knob controls all randomness.
std::uint64_t stage_seed(std::uint64_t seed, const std::string& stage);

/// End-to-end run: modality similarities, fusion weight, fused graph,
/// Laplacian spectrum, eigengap candidates, k selection, clustering, metrics.
/// Each stage failure is rethrown tagged with its step number.
AscResult run_asc(const NumericDataset& numeric, const TextDataset& text,
                  const ConstraintSets& constraints, const PipelineConfig& config);

/// Writes the full artifact set (assignments.csv, metrics.json,
/// k_selection.csv, lambda_grid.csv, eigen_report.csv, profile.csv,
/// config.echo) into `out_dir`.
void write_artifacts(const std::string& out_dir, const AscResult& result,
                     const NumericDataset& numeric, const TextDataset& text,
                     const PipelineConfig& config);

std::string config_to_json(const PipelineConfig& config);

} // namespace asc
