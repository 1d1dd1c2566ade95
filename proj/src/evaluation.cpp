#include "asc/evaluation.hpp"
#include "asc/errors.hpp"
#include "asc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace asc {

namespace {

int num_clusters(const std::vector<int>& labels) {
    int k = 0;
    for (int l : labels) {
        if (l < 0) throw InputError("negative cluster label");
        k = std::max(k, l + 1);
    }
    return k;
}

std::vector<int> cluster_sizes(const std::vector<int>& labels, int k) {
    std::vector<int> sizes(k, 0);
    for (int l : labels) ++sizes[l];
    for (int c = 0; c < k; ++c)
        if (sizes[c] == 0) throw InputError("empty cluster " + std::to_string(c));
    return sizes;
}

} // namespace

SilhouetteResult silhouette(const Eigen::MatrixXd& points,
                            const std::vector<int>& labels) {
    const int n = static_cast<int>(points.rows());
    if (static_cast<int>(labels.size()) != n)
        throw InputError("silhouette: labels/points length mismatch");
    const int k = num_clusters(labels);
    if (k < 2) throw InputError("silhouette needs at least 2 clusters");
    auto sizes = cluster_sizes(labels, k);

    Eigen::MatrixXd dist = kernels::pairwise_euclidean(points);
    SilhouetteResult res;
    res.per_sample.resize(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<double> sums(k, 0.0);
        for (int j = 0; j < n; ++j)
            if (j != i) sums[labels[j]] += dist(i, j);

        double s = 0.0;
        if (sizes[labels[i]] > 1) {
            double a = sums[labels[i]] / (sizes[labels[i]] - 1);
            double b = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c)
                if (c != labels[i]) b = std::min(b, sums[c] / sizes[c]);
            double denom = std::max(a, b);
            s = denom > 0.0 ? (b - a) / denom : 0.0;
        }
        res.per_sample(i) = s;
        total += s;
    }
    res.mean = total / n;
    return res;
}

double intra_inter_ratio(const Eigen::MatrixXd& points,
                         const std::vector<int>& labels,
                         const Eigen::MatrixXd& centers) {
    const int n = static_cast<int>(points.rows());
    const int k = static_cast<int>(centers.rows());
    if (k < 2) throw InputError("intra/inter needs at least 2 clusters");

    double intra = 0.0;
    for (int i = 0; i < n; ++i)
        intra += (points.row(i) - centers.row(labels[i])).norm();
    intra /= n;

    double inter = 0.0;
    int pairs = 0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            inter += (centers.row(a) - centers.row(b)).norm();
            ++pairs;
        }
    inter /= pairs;
    if (inter <= 0.0) throw NumericError("intra/inter: coincident cluster centers");
    return intra / inter;
}

double calinski_harabasz(const Eigen::MatrixXd& points,
                         const std::vector<int>& labels) {
    const int n = static_cast<int>(points.rows());
    const int k = num_clusters(labels);
    if (k < 2 || k >= n)
        throw InputError("calinski_harabasz needs 2 <= k < n");
    auto sizes = cluster_sizes(labels, k);

    Eigen::RowVectorXd overall = points.colwise().mean();
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.cols());
    for (int i = 0; i < n; ++i) centers.row(labels[i]) += points.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= sizes[c];

    double between = 0.0;
    for (int c = 0; c < k; ++c)
        between += sizes[c] * (centers.row(c) - overall).squaredNorm();
    double within = 0.0;
    for (int i = 0; i < n; ++i)
        within += (points.row(i) - centers.row(labels[i])).squaredNorm();

    if (within <= 0.0)
        return std::numeric_limits<double>::infinity(); // every cluster collapsed
    return (between / (k - 1)) / (within / (n - k));
}

double davies_bouldin(const Eigen::MatrixXd& points,
                      const std::vector<int>& labels) {
    const int n = static_cast<int>(points.rows());
    const int k = num_clusters(labels);
    if (k < 2) throw InputError("davies_bouldin needs at least 2 clusters");
    auto sizes = cluster_sizes(labels, k);

    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.cols());
    for (int i = 0; i < n; ++i) centers.row(labels[i]) += points.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= sizes[c];

    std::vector<double> scatter(k, 0.0);
    for (int i = 0; i < n; ++i)
        scatter[labels[i]] += (points.row(i) - centers.row(labels[i])).norm();
    for (int c = 0; c < k; ++c) scatter[c] /= sizes[c];

    double total = 0.0;
    for (int a = 0; a < k; ++a) {
        double worst = 0.0;
        for (int b = 0; b < k; ++b) {
            if (b == a) continue;
            double d = (centers.row(a) - centers.row(b)).norm();
            if (d <= 0.0) throw NumericError("davies_bouldin: coincident centers");
            worst = std::max(worst, (scatter[a] + scatter[b]) / d);
        }
        total += worst;
    }
    return total / k;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw InputError("adjusted_rand_index: length mismatch");
    const double n = static_cast<double>(a.size());
    std::map<std::pair<int, int>, double> cont;
    std::map<int, double> row_sum, col_sum;
    for (size_t i = 0; i < a.size(); ++i) {
        cont[{a[i], b[i]}] += 1.0;
        row_sum[a[i]] += 1.0;
        col_sum[b[i]] += 1.0;
    }
    auto choose2 = [](double m) { return m * (m - 1.0) / 2.0; };
    double sum_cont = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (auto& [key, v] : cont) sum_cont += choose2(v);
    for (auto& [key, v] : row_sum) sum_rows += choose2(v);
    for (auto& [key, v] : col_sum) sum_cols += choose2(v);
    double expected = sum_rows * sum_cols / choose2(n);
    double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0; // both partitions trivial
    return (sum_cont - expected) / (max_index - expected);
}

MetricBundle metric_bundle(const Eigen::MatrixXd& points,
                           const std::vector<int>& labels,
                           const Eigen::MatrixXd& centers) {
    MetricBundle m;
    m.silhouette = silhouette(points, labels).mean;
    m.intra_inter = intra_inter_ratio(points, labels, centers);
    m.calinski_harabasz = calinski_harabasz(points, labels);
    m.davies_bouldin = davies_bouldin(points, labels);
    return m;
}

ClusterProfile word_frequency_ratio(const TextDataset& text,
                                    const std::vector<int>& labels, int k) {
    if (static_cast<int>(labels.size()) != text.n())
        throw InputError("word_frequency_ratio: labels do not align with text rows");
    ClusterProfile prof;
    prof.terms = text.lexicon;
    prof.ratios = Eigen::MatrixXd::Zero(text.q(), k);
    prof.dominant.assign(text.q(), 0);
    for (int i = 0; i < text.n(); ++i)
        for (int t = 0; t < text.q(); ++t)
            prof.ratios(t, labels[i]) += text.counts(i, t);
    for (int t = 0; t < text.q(); ++t) {
        double total = prof.ratios.row(t).sum();
        if (total > 0.0) prof.ratios.row(t) /= total;
        int best = 0;
        for (int c = 1; c < k; ++c)
            if (prof.ratios(t, c) > prof.ratios(t, best)) best = c;
        prof.dominant[t] = best;
    }
    return prof;
}

DatasetSummary dataset_summary(const NumericDataset& data) {
    if (data.n() < 2) throw InputError("dataset_summary needs at least 2 samples");
    DatasetSummary s;
    s.features = data.features;
    s.mean = data.values.colwise().mean().transpose();
    Eigen::MatrixXd centered = data.values.rowwise() - s.mean.transpose();
    s.sd = (centered.array().square().colwise().sum() / (data.n() - 1)).sqrt().transpose();
    s.cv.resize(data.p());
    for (int j = 0; j < data.p(); ++j)
        s.cv(j) = s.mean(j) != 0.0 ? 100.0 * s.sd(j) / s.mean(j)
                                   : std::numeric_limits<double>::quiet_NaN();
    return s;
}

} // namespace asc
