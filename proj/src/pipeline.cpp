#include "asc/pipeline.hpp"
#include "asc/errors.hpp"
#include "asc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_map>

namespace asc {

Modality modality_from_string(const std::string& name) {
    if (name == "fused") return Modality::fused;
    if (name == "numeric") return Modality::numeric;
    if (name == "text") return Modality::text;
    throw ConfigError("unknown modality: " + name);
}

std::string to_string(Modality m) {
    switch (m) {
        case Modality::fused: return "fused";
        case Modality::numeric: return "numeric";
        case Modality::text: return "text";
    }
    return "?";
}

LaplacianKind laplacian_kind_from_string(const std::string& name) {
    if (name == "unnormalized") return LaplacianKind::unnormalized;
    if (name == "symmetric") return LaplacianKind::symmetric;
    if (name == "random_walk") return LaplacianKind::random_walk;
    throw ConfigError("unknown laplacian kind: " + name);
}

std::string to_string(LaplacianKind k) {
    switch (k) {
        case LaplacianKind::unnormalized: return "unnormalized";
        case LaplacianKind::symmetric: return "symmetric";
        case LaplacianKind::random_walk: return "random_walk";
    }
    return "?";
}

std::uint64_t stage_seed(std::uint64_t seed, const std::string& stage) {
    // FNV-1a over the stage name, mixed with the config seed.
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : stage) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h ^ (seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
}

namespace {

template <typename F>
auto stage(int step, const std::string& name, F&& f) {
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError("step " + std::to_string(step) + " (" + name + "): " + e.what());
    } catch (const NumericError& e) {
        throw NumericError("step " + std::to_string(step) + " (" + name + "): " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError("step " + std::to_string(step) + " (" + name + "): " + e.what());
    }
}

// Modalities are aligned by sample identifier, not row order.
TextDataset align_text(const NumericDataset& numeric, const TextDataset& text) {
    if (numeric.samples == text.samples) return text;
    if (numeric.n() != text.n())
        throw InputError("numeric and text datasets have different sample counts");
    std::unordered_map<std::string, int> row_of;
    for (int i = 0; i < text.n(); ++i) row_of[text.samples[i]] = i;
    TextDataset aligned;
    aligned.samples = numeric.samples;
    aligned.lexicon = text.lexicon;
    aligned.counts.resize(text.n(), text.q());
    for (int i = 0; i < numeric.n(); ++i) {
        auto it = row_of.find(numeric.samples[i]);
        if (it == row_of.end())
            throw InputError("sample \"" + numeric.samples[i] + "\" missing from text dataset");
        aligned.counts.row(i) = text.counts.row(it->second);
    }
    return aligned;
}

Eigen::MatrixXd cluster_centers(const Eigen::MatrixXd& points,
                                const std::vector<int>& labels, int k) {
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int> sizes(k, 0);
    for (size_t i = 0; i < labels.size(); ++i) {
        centers.row(labels[i]) += points.row(static_cast<int>(i));
        ++sizes[labels[i]];
    }
    for (int c = 0; c < k; ++c)
        if (sizes[c] > 0) centers.row(c) /= sizes[c];
    return centers;
}

} // namespace

AscResult run_asc(const NumericDataset& numeric, const TextDataset& text_in,
                  const ConstraintSets& constraints, const PipelineConfig& config) {
    AscResult res;
    TextDataset text = align_text(numeric, text_in);
    validate_constraints(constraints, numeric.n());

    SimilarityMatrix numeric_sim, text_sim;
    if (config.modality != Modality::text)
        numeric_sim = stage(1, "numeric similarity",
                            [&] { return numeric_similarity_matrix(numeric); });
    if (config.modality != Modality::numeric)
        text_sim = stage(2, "text similarity",
                         [&] { return text_similarity_matrix(text); });

    SimilarityMatrix w;
    if (config.modality == Modality::fused) {
        SimilarityMatrix mixed_numeric =
            config.rescale_numeric ? rescale_offdiagonal(numeric_sim) : numeric_sim;
        if (config.fixed_lambda) {
            res.lambda.lambda = *config.fixed_lambda;
            res.lambda.objective = res.lambda.lambda * (1.0 - res.lambda.lambda);
            res.lambda.satisfied_fraction = 1.0;
        } else {
            LambdaOptions opts;
            opts.step = config.lambda_step;
            opts.max_triples = config.max_triples;
            opts.seed = stage_seed(config.seed, "lambda");
            opts.literal_rhs = config.eq7_literal;
            res.lambda = stage(3, "lambda optimization", [&] {
                return optimize_lambda(mixed_numeric, text_sim, constraints, opts);
            });
        }
        w = stage(4, "fusion", [&] {
            return fuse_similarity(mixed_numeric, text_sim, res.lambda.lambda);
        });
    } else if (config.modality == Modality::numeric) {
        w = numeric_sim;
        res.lambda.lambda = 1.0;
    } else {
        w = text_sim;
        res.lambda.lambda = 0.0;
    }

    // Self-loops carry no clustering information.
    w.values.diagonal().setZero();

    const int n = w.n();
    res.decomposition = stage(6, "eigendecomposition", [&] {
        return eigendecompose(w.values, config.laplacian, n);
    });

    int window = std::min(config.eigen_window, n - 1);
    if (window < 3) window = std::min(3, n - 1);
    res.gaps = stage(6, "eigengap analysis",
                     [&] { return eigengap_candidates(res.decomposition, window); });

    SelectKOptions sel;
    sel.method = config.method;
    sel.seed = stage_seed(config.seed, "cluster");
    sel.restarts = config.restarts;
    sel.row_normalize = config.row_normalize;
    sel.literal_score = config.eq10_literal;
    auto [report, assignment] = stage(9, "k selection", [&] {
        return select_k(res.decomposition, res.gaps, sel);
    });
    res.selection = std::move(report);
    res.assignment = std::move(assignment);

    res.embedding = spectral_embedding(res.decomposition,
                                       std::max(1, res.selection.chosen_k - 1),
                                       config.row_normalize);

    stage(9, "metrics", [&] {
        if (config.metrics_in_numeric_space) {
            Eigen::MatrixXd centers =
                cluster_centers(numeric.values, res.assignment.labels, res.assignment.k);
            res.metrics = metric_bundle(numeric.values, res.assignment.labels, centers);
        } else {
            res.metrics = metric_bundle(res.embedding.coordinates, res.assignment.labels,
                                        res.assignment.centers);
        }
        return 0;
    });
    return res;
}

std::string config_to_json(const PipelineConfig& config) {
    nlohmann::json j;
    j["lambda"] = config.fixed_lambda ? nlohmann::json(*config.fixed_lambda)
                                      : nlohmann::json("optimize");
    j["lambda_step"] = config.lambda_step;
    j["max_triples"] = config.max_triples;
    j["laplacian"] = to_string(config.laplacian);
    j["eigen_window"] = config.eigen_window;
    j["method"] = to_string(config.method);
    j["restarts"] = config.restarts;
    j["seed"] = config.seed;
    j["rescale_numeric"] = config.rescale_numeric;
    j["eq7_literal"] = config.eq7_literal;
    j["eq10_literal"] = config.eq10_literal;
    j["row_normalize"] = config.row_normalize;
    j["modality"] = to_string(config.modality);
    j["metrics_space"] = config.metrics_in_numeric_space ? "numeric" : "embedding";
    return j.dump(2);
}

void write_artifacts(const std::string& out_dir, const AscResult& result,
                     const NumericDataset& numeric, const TextDataset& text,
                     const PipelineConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    save_labels_csv(numeric.samples, result.assignment.labels, path("assignments.csv"));

    {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["modality"] = to_string(config.modality);
        j["lambda"] = result.lambda.lambda;
        j["k"] = result.assignment.k;
        j["method"] = to_string(result.assignment.method);
        j["silhouette"] = result.metrics.silhouette;
        j["intra_inter"] = result.metrics.intra_inter;
        j["calinski_harabasz"] = result.metrics.calinski_harabasz;
        j["davies_bouldin"] = result.metrics.davies_bouldin;
        j["metrics_space"] = config.metrics_in_numeric_space ? "numeric" : "embedding";
        std::ofstream out(path("metrics.json"));
        out << j.dump(2) << "\n";
    }

    {
        std::ofstream out(path("k_selection.csv"));
        out << "k,gap,silhouette,score,chosen\n";
        for (const auto& row : result.selection.rows)
            out << row.k << "," << format_double(row.gap) << ","
                << format_double(row.silhouette) << "," << format_double(row.score)
                << "," << (row.k == result.selection.chosen_k ? 1 : 0) << "\n";
    }

    {
        std::ofstream out(path("lambda_grid.csv"));
        out << "lambda,mean_must_link_sim,mean_cannot_link_sim,satisfied_fraction,feasible\n";
        if (result.lambda.grid.empty()) {
            out << format_double(result.lambda.lambda) << ",,,,\n";
        } else {
            for (const auto& row : result.lambda.grid)
                out << format_double(row.lambda) << ","
                    << format_double(row.mean_must_link) << ","
                    << format_double(row.mean_cannot_link) << ","
                    << format_double(row.satisfied_fraction) << ","
                    << (row.feasible ? 1 : 0) << "\n";
        }
    }

    {
        std::ofstream out(path("eigen_report.csv"));
        out << "index,eigenvalue,gap,candidate\n";
        const auto& rep = result.gaps;
        for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
            int k = static_cast<int>(i) + 1 + rep.zeros_removed;
            bool cand = false;
            for (int c : rep.candidates)
                if (c == k) cand = true;
            out << (i + 1) << "," << format_double(rep.eigenvalues[i]) << ","
                << (i < rep.gaps.size() ? format_double(rep.gaps[i]) : "") << ","
                << (cand ? 1 : 0) << "\n";
        }
    }

    {
        ClusterProfile prof =
            word_frequency_ratio(text, result.assignment.labels, result.assignment.k);
        std::ofstream out(path("profile.csv"));
        out << "term";
        for (int c = 0; c < result.assignment.k; ++c) out << ",cluster_" << c;
        out << ",dominant\n";
        for (int t = 0; t < prof.ratios.rows(); ++t) {
            out << prof.terms[t];
            for (int c = 0; c < prof.ratios.cols(); ++c)
                out << "," << format_double(prof.ratios(t, c));
            out << "," << prof.dominant[t] << "\n";
        }
    }

    {
        std::ofstream out(path("config.echo"));
        out << config_to_json(config) << "\n";
    }
}

} // namespace asc
