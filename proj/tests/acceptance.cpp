// Acceptance suite: one pass/fail line per release criterion.
#include "asc/clustering.hpp"
#include "asc/dataset.hpp"
#include "asc/evaluation.hpp"
#include "asc/io.hpp"
#include "asc/pipeline.hpp"
#include "asc/similarity.hpp"
#include "asc/spectral.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace asc;
namespace fs = std::filesystem;

namespace {

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int n, int p, double scale) {
    Eigen::MatrixXd m(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            m(i, j) = (static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5) * 2.0 * scale;
    return m;
}

std::vector<int> random_labels(std::mt19937_64& rng, int n, int k) {
    std::vector<int> labels(n);
    for (int c = 0; c < k; ++c) labels[c] = c;
    for (int i = k; i < n; ++i) labels[i] = static_cast<int>(rng() % k);
    return labels;
}

NumericDataset wrap_numeric(const Eigen::MatrixXd& values) {
    NumericDataset d;
    d.values = values;
    for (int i = 0; i < values.rows(); ++i) d.samples.push_back(std::to_string(i));
    for (int j = 0; j < values.cols(); ++j) d.features.push_back("Var" + std::to_string(j + 1));
    return d;
}

TextDataset wrap_text(const Eigen::MatrixXd& counts) {
    TextDataset d;
    d.counts = counts;
    for (int i = 0; i < counts.rows(); ++i) d.samples.push_back(std::to_string(i));
    for (int j = 0; j < counts.cols(); ++j) d.lexicon.push_back("t" + std::to_string(j));
    return d;
}

// --- criterion 1: oracle agreement on random instances ---------------------

bool criterion_oracles() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    const double tol = 1e-10;
    bool ok = true;

    for (int trial = 0; trial < 25; ++trial) {
        int n = 8 + trial % 5;
        int k = 2 + trial % 3;
        Eigen::MatrixXd pts = random_matrix(rng, n, 3, 3.0);
        auto labels = random_labels(rng, n, k);

        // mahalanobis under the dataset's own covariance model
        auto model = covariance_model(wrap_numeric(pts));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                ok &= close(mahalanobis(pts.row(a), pts.row(b), model),
                            oracle::mahalanobis(pts.row(a), pts.row(b), model.sigma_inv), tol);

        // idf / tf-idf / cosine on integer count matrices
        Eigen::MatrixXd counts(n, 6);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 6; ++j) counts(i, j) = static_cast<double>(rng() % 5);
        auto text = wrap_text(counts);
        ok &= (inverse_document_frequency(text) - oracle::idf(counts)).cwiseAbs().maxCoeff() <
              tol;
        ok &= (tfidf_weights(text) - oracle::tfidf(counts)).cwiseAbs().maxCoeff() < tol;
        auto w = text_similarity_matrix(text);
        Eigen::MatrixXd h = oracle::tfidf(counts);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b) ok &= close(w.values(a, b), oracle::cosine(h.row(a), h.row(b)), tol);

        // internal metrics
        ok &= close(silhouette(pts, labels).mean, oracle::silhouette_mean(pts, labels), tol);
        ok &= close(calinski_harabasz(pts, labels), oracle::calinski_harabasz(pts, labels), tol);
        ok &= close(davies_bouldin(pts, labels), oracle::davies_bouldin(pts, labels), tol);
        Eigen::MatrixXd centers = oracle::centroids(pts, labels, k);
        ok &= close(intra_inter_ratio(pts, labels, centers),
                    oracle::intra_inter(pts, labels, centers), tol);

        auto other = random_labels(rng, n, 2 + (trial + 1) % 3);
        ok &= close(adjusted_rand_index(labels, other),
                    oracle::adjusted_rand_index(labels, other), tol);
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return ok && secs < 5.0;
}

// --- criterion 2: spectral invariants ---------------------------------------

Eigen::MatrixXd components_graph(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) n += s;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    int base = 0;
    for (int s : sizes) {
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) w(base + i, base + j) = w(base + j, base + i) = 1.0;
        base += s;
    }
    return w;
}

bool criterion_spectral() {
    bool ok = true;
    std::mt19937_64 rng(7);

    Eigen::MatrixXd w = random_matrix(rng, 14, 14, 0.5).cwiseAbs();
    w = ((w + w.transpose()) / 2).eval();
    w.diagonal().setZero();
    Eigen::MatrixXd l = laplacian(w, degree_vector(w), LaplacianKind::unnormalized);
    for (int i = 0; i < 14; ++i) ok &= std::abs(l.row(i).sum()) <= 1e-10;

    for (auto kind : {LaplacianKind::unnormalized, LaplacianKind::symmetric,
                      LaplacianKind::random_walk}) {
        auto dec = eigendecompose(w, kind, 14);
        for (int i = 0; i < 14; ++i) ok &= dec.eigenvalues(i) >= -1e-8;
    }

    ok &= eigendecompose(components_graph({6}), LaplacianKind::unnormalized, 6)
              .zero_multiplicity == 1;
    ok &= eigendecompose(components_graph({4, 4}), LaplacianKind::unnormalized, 8)
              .zero_multiplicity == 2;
    ok &= eigendecompose(components_graph({3, 4, 5}), LaplacianKind::unnormalized, 12)
              .zero_multiplicity == 3;

    Eigen::MatrixXd path = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 3; ++i) path(i, i + 1) = path(i + 1, i) = 1.0;
    auto dec = eigendecompose(path, LaplacianKind::unnormalized, 4);
    double s = std::sqrt(2.0);
    double expected[4] = {0.0, 2.0 - s, 2.0, 2.0 + s};
    for (int i = 0; i < 4; ++i) ok &= std::abs(dec.eigenvalues(i) - expected[i]) <= 1e-8;
    return ok;
}

// --- criterion 3: fusion beats each single modality --------------------------

SyntheticSpec standard_bundle_spec() {
    SyntheticSpec spec;
    spec.n = 150;
    spec.clusters = 3;
    spec.seed = 32;
    spec.text_groups = {0, 1, 1}; // text alone cannot split clusters 1 and 2
    // heavy off-topic chatter keeps the text modality noisy on its own
    spec.text_dispersion = 5.0;
    // most of the text-identifiable cluster carries diffuse numeric rows that
    // only the text modality can put back
    spec.numeric_outlier_fraction = 0.6;
    return spec;
}

bool criterion_fusion() {
    auto t0 = std::chrono::steady_clock::now();
    auto bundle = generate_synthetic(standard_bundle_spec());

    PipelineConfig config;
    config.seed = 1;
    auto fused = run_asc(bundle.numeric, bundle.text, bundle.constraints, config);
    double ari_fused = adjusted_rand_index(fused.assignment.labels, bundle.labels);

    config.modality = Modality::numeric;
    auto num = run_asc(bundle.numeric, bundle.text, bundle.constraints, config);
    config.modality = Modality::text;
    auto txt = run_asc(bundle.numeric, bundle.text, bundle.constraints, config);

    double ari_num = adjusted_rand_index(num.assignment.labels, bundle.labels);
    double ari_txt = adjusted_rand_index(txt.assignment.labels, bundle.labels);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = ari_fused >= 0.9 && ari_num <= 0.7 && ari_txt <= 0.7 &&
              fused.metrics.silhouette > num.metrics.silhouette &&
              fused.metrics.silhouette > txt.metrics.silhouette && secs < 10.0;
    if (!ok)
        std::cerr << "    fusion detail: ari fused=" << ari_fused << " numeric=" << ari_num
                  << " text=" << ari_txt << " sil fused=" << fused.metrics.silhouette
                  << " numeric=" << num.metrics.silhouette
                  << " text=" << txt.metrics.silhouette << " (" << secs << " s)\n";
    return ok;
}

// --- criterion 4: weight optimizer on hand-enumerated instances --------------

std::pair<SimilarityMatrix, SimilarityMatrix> feasibility_window(double lo, double hi) {
    double n01 = 1.0, t01 = 1.0 - lo - 0.3;
    double n02 = n01 - (1.0 - lo);
    double t02 = t01 + lo;
    double n12 = n01 + (1.0 - hi);
    double t12 = t01 - hi;
    double shift = t12 < 0.0 ? -t12 : 0.0;
    t01 += shift;
    t02 += shift;
    t12 += shift;
    Eigen::MatrixXd n(3, 3), t(3, 3);
    n << 0, n01, n02, n01, 0, n12, n02, n12, 0;
    t << 0, t01, t02, t01, 0, t12, t02, t12, 0;
    return {SimilarityMatrix{n, SimilarityMatrix::Kind::numeric, -1},
            SimilarityMatrix{t, SimilarityMatrix::Kind::text, -1}};
}

bool criterion_lambda() {
    ConstraintSets c{{0, 1}, {2}};
    bool ok = true;

    auto [n1, t1] = feasibility_window(0.38, 0.62); // feasible grid: {0.40..0.60}
    auto sol1 = optimize_lambda(n1, t1, c);
    ok &= std::abs(sol1.lambda - 0.5) < 1e-12 && std::abs(sol1.objective - 0.25) < 1e-12;

    auto [n2, t2] = feasibility_window(0.58, 0.82); // feasible grid: {0.60..0.80}
    auto sol2 = optimize_lambda(n2, t2, c);
    ok &= std::abs(sol2.lambda - 0.6) < 1e-12;

    for (double step : {0.05, 0.1, 0.25}) {
        LambdaOptions opts;
        opts.step = step;
        ok &= optimize_lambda(n1, t1, c, opts).grid.size() ==
              static_cast<size_t>(std::lround(1.0 / step)) + 1;
    }
    return ok;
}

// --- criterion 5: planted cluster-count recovery ------------------------------

bool planted_k_recovered(int planted, int per_cluster) {
    const int n = planted * per_cluster;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) w(i, j) = (i / per_cluster == j / per_cluster) ? 1.0 : 0.02;
    auto dec = eigendecompose(w, LaplacianKind::random_walk, n);
    auto gaps = eigengap_candidates(dec, 20);
    bool has = false;
    for (int k : gaps.candidates) has |= (k == planted);
    SelectKOptions opts;
    opts.seed = 3;
    auto [report, assignment] = select_k(dec, gaps, opts);
    return has && report.chosen_k == planted;
}

bool criterion_k_selection() {
    return planted_k_recovered(3, 10) && planted_k_recovered(2, 12);
}

// --- criterion 6: backend robustness ------------------------------------------

bool criterion_backends() {
    auto bundle = generate_synthetic(standard_bundle_spec());
    PipelineConfig config;
    config.seed = 1;
    auto res = run_asc(bundle.numeric, bundle.text, bundle.constraints, config);
    const Eigen::MatrixXd& emb = res.embedding.coordinates;
    int k = res.assignment.k;

    auto km = kmeans(emb, k, 5, 100, 10);
    auto kmed = kmedians(emb, k, 5, 100, 10);
    auto pam = kmedoids_hill_climb(emb, k, 5);

    double sils[3] = {silhouette(emb, km.labels).mean, silhouette(emb, kmed.labels).mean,
                      silhouette(emb, pam.labels).mean};
    double aris[3] = {adjusted_rand_index(km.labels, bundle.labels),
                      adjusted_rand_index(kmed.labels, bundle.labels),
                      adjusted_rand_index(pam.labels, bundle.labels)};
    bool ok = true;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) ok &= std::abs(sils[a] - sils[b]) <= 0.05;
    for (double ari : aris) ok &= ari >= 0.9;
    ok &= aris[0] == aris[1] && aris[1] == aris[2];

    // verify the medoid solution is one-swap locally optimal
    std::vector<int> medoids;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < emb.rows(); ++i)
            if (emb.row(i) == pam.centers.row(c)) {
                medoids.push_back(i);
                break;
            }
    ok &= static_cast<int>(medoids.size()) == k;
    auto objective_of = [&](const std::vector<int>& med) {
        double obj = 0.0;
        for (int i = 0; i < emb.rows(); ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (int m : med) d = std::min(d, (emb.row(i) - emb.row(m)).norm());
            obj += d;
        }
        return obj;
    };
    for (size_t slot = 0; slot < medoids.size() && ok; ++slot)
        for (int cand = 0; cand < emb.rows(); ++cand) {
            if (std::count(medoids.begin(), medoids.end(), cand)) continue;
            std::vector<int> swapped = medoids;
            swapped[slot] = cand;
            ok &= objective_of(swapped) >= pam.objective - 1e-9;
        }
    if (!ok)
        std::cerr << "    backend detail: sil=" << sils[0] << "," << sils[1] << ","
                  << sils[2] << " ari=" << aris[0] << "," << aris[1] << "," << aris[2]
                  << "\n";
    return ok;
}

// --- criterion 7: enumeration optimality of k-means ---------------------------

bool criterion_kmeans_optimal() {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::MatrixXd pts = random_matrix(rng, 7, 2, 3.0);
        double best = oracle::best_two_partition_sq(pts);
        auto a = kmeans(pts, 2, trial, 100, 20);
        if (a.objective > best + 1e-9 || a.objective < best - 1e-9) {
            std::cerr << "    kmeans detail: trial " << trial << " got " << a.objective
                      << " optimum " << best << "\n";
            return false;
        }
    }
    return true;
}

// --- criterion 8: summary-statistics arithmetic -------------------------------

bool criterion_summary_stats() {
    struct Row {
        double mean, sd, cv;
    };
    const Row rows[5] = {{21.34, 19.65, 92.08},
                         {17.28, 7.59, 43.92},
                         {15.38, 12.37, 80.43},
                         {64.53, 20.63, 31.97},
                         {82.36, 22.57, 27.40}};
    NumericDataset d;
    d.samples = {"a", "b"};
    d.values.resize(2, 5);
    for (int j = 0; j < 5; ++j) {
        d.features.push_back("Var" + std::to_string(j + 1));
        double half = rows[j].sd / std::sqrt(2.0);
        d.values(0, j) = rows[j].mean - half;
        d.values(1, j) = rows[j].mean + half;
    }
    auto s = dataset_summary(d);
    for (int j = 0; j < 5; ++j)
        if (std::abs(s.cv(j) - rows[j].cv) > 0.01) return false;
    return true;
}

// --- criterion 9: run-to-run and thread-count determinism ---------------------

int shell(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    return (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_determinism() {
    fs::path tmp = fs::temp_directory_path() /
                   ("asc_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(tmp);
    struct Cleanup {
        fs::path p;
        ~Cleanup() { fs::remove_all(p); }
    } cleanup{tmp};

    std::string cli = ASC_CLI_PATH;
    std::string data = (tmp / "data").string();
    if (shell(cli + " synth --n 90 --clusters 3 --seed 8 --out " + data +
              " >/dev/null 2>&1") != 0)
        return false;
    std::string flags = " --numeric " + data + "/numeric.csv --text " + data +
                        "/text_tf.csv --lexicon " + data + "/lexicon.txt --constraints " +
                        data + "/constraints.json --seed 5 >/dev/null 2>&1";

    auto run_to = [&](const std::string& dir, const std::string& env) {
        return shell(env + cli + " cluster --out " + (tmp / dir).string() + flags) == 0;
    };
    if (!run_to("r1", "") || !run_to("r2", "") ||
        !run_to("t1", "OMP_NUM_THREADS=1 ") || !run_to("t4", "OMP_NUM_THREADS=4 "))
        return false;

    const char* artifacts[] = {"assignments.csv", "metrics.json",     "k_selection.csv",
                               "lambda_grid.csv", "eigen_report.csv", "profile.csv",
                               "config.echo"};
    for (const char* f : artifacts)
        if (slurp((tmp / "r1" / f).string()) != slurp((tmp / "r2" / f).string()))
            return false;
    for (const char* f : {"assignments.csv", "metrics.json"})
        if (slurp((tmp / "t1" / f).string()) != slurp((tmp / "t4" / f).string()))
            return false;
    return true;
}

// --- criterion 10: external-dataset targets (informational) -------------------

bool criterion_external(bool& skipped) {
    const char* dir = std::getenv("ASC_SME_DATA_DIR");
    if (!dir) {
        skipped = true;
        return true;
    }
    skipped = false;
    std::string d(dir);
    auto numeric = load_numeric_csv(d + "/numeric.csv");
    auto text = load_term_frequency(d + "/text_tf.csv", d + "/lexicon.txt", numeric.samples);
    auto constraints = load_constraints(d + "/constraints.json", numeric.n());
    PipelineConfig config;
    config.rescale_numeric = false;
    config.eq7_literal = true;
    auto res = run_asc(numeric, text, constraints, config);
    std::cerr << "    external detail: lambda=" << res.lambda.lambda
              << " chosen_k=" << res.selection.chosen_k << " candidates=";
    for (int k : res.selection.candidates) std::cerr << k << " ";
    std::cerr << "\n";
    return std::abs(res.lambda.lambda - 0.65) < 1e-9 && res.selection.chosen_k == 3;
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<bool()> check;
        bool gates;
    };
    bool external_skipped = false;
    std::vector<Criterion> criteria = {
        {"criterion 1 (metric oracles)", criterion_oracles, true},
        {"criterion 2 (spectral invariants)", criterion_spectral, true},
        {"criterion 3 (fusion beats single modality)", criterion_fusion, true},
        {"criterion 4 (weight optimizer)", criterion_lambda, true},
        {"criterion 5 (cluster-count selection)", criterion_k_selection, true},
        {"criterion 6 (backend robustness)", criterion_backends, true},
        {"criterion 7 (k-means enumeration optimality)", criterion_kmeans_optimal, true},
        {"criterion 8 (summary statistics)", criterion_summary_stats, true},
        {"criterion 9 (determinism)", criterion_determinism, true},
        {"criterion 10 (external dataset targets)",
         [&] { return criterion_external(external_skipped); }, false},
    };

    int failures = 0;
    for (auto& c : criteria) {
        bool ok = false;
        std::string note;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            ok = false;
            note = std::string(" (exception: ") + e.what() + ")";
        }
        if (c.label == std::string("criterion 10 (external dataset targets)") &&
            external_skipped) {
            std::cout << c.label << ": SKIP (set ASC_SME_DATA_DIR to enable)\n";
            continue;
        }
        std::cout << c.label << ": " << (ok ? "PASS" : "FAIL") << note << "\n";
        if (!ok && c.gates) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
