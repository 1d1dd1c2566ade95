// Brute-force reference implementations used to cross-check the library.
// Everything here recomputes results from first principles and must stay
// independent of the code paths under test.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

// Two-pass sample covariance with divisor n-1.
inline Eigen::MatrixXd covariance(const Eigen::MatrixXd& x) {
    const int n = static_cast<int>(x.rows());
    const int p = static_cast<int>(x.cols());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) mean(j) += x(i, j);
    mean /= n;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                cov(a, b) += (x(i, a) - mean(a)) * (x(i, b) - mean(b));
    return cov / (n - 1);
}

// Quadratic form evaluated by explicit matrix multiplication.
inline double mahalanobis(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                          const Eigen::MatrixXd& sigma_inv) {
    Eigen::VectorXd d = xi - xj;
    double quad = (d.transpose() * sigma_inv * d)(0);
    return std::sqrt(std::max(0.0, quad));
}

inline Eigen::VectorXd idf(const Eigen::MatrixXd& counts) {
    const int n = static_cast<int>(counts.rows());
    const int q = static_cast<int>(counts.cols());
    Eigen::VectorXd out(q);
    for (int t = 0; t < q; ++t) {
        int docs = 0;
        for (int i = 0; i < n; ++i)
            if (counts(i, t) > 0) ++docs;
        out(t) = docs > 0 ? std::log(double(n) / docs) : 0.0;
    }
    return out;
}

inline Eigen::MatrixXd tfidf(const Eigen::MatrixXd& counts) {
    Eigen::VectorXd w = idf(counts);
    Eigen::MatrixXd h = counts;
    for (int i = 0; i < h.rows(); ++i)
        for (int t = 0; t < h.cols(); ++t)
            h(i, t) = std::log(1.0 + counts(i, t)) * w(t);
    return h;
}

inline double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double na = 0, nb = 0, dot = 0;
    for (int i = 0; i < a.size(); ++i) {
        na += a(i) * a(i);
        nb += b(i) * b(i);
        dot += a(i) * b(i);
    }
    if (na <= 0 || nb <= 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline double dist(const Eigen::MatrixXd& pts, int i, int j) {
    return (pts.row(i) - pts.row(j)).norm();
}

// Direct a/b silhouette computation.
inline double silhouette_mean(const Eigen::MatrixXd& pts, const std::vector<int>& labels) {
    const int n = static_cast<int>(pts.rows());
    int k = 1 + *std::max_element(labels.begin(), labels.end());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<double> sum(k, 0.0);
        std::vector<int> cnt(k, 0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            sum[labels[j]] += dist(pts, i, j);
            ++cnt[labels[j]];
        }
        int own = labels[i];
        if (cnt[own] == 0) continue; // singleton scores 0
        double a = sum[own] / cnt[own];
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c)
            if (c != own && cnt[c] + (c == own ? 0 : 0) > 0)
                b = std::min(b, sum[c] / cnt[c]);
        double denom = std::max(a, b);
        if (denom > 0) total += (b - a) / denom;
    }
    return total / n;
}

inline Eigen::MatrixXd centroids(const Eigen::MatrixXd& pts, const std::vector<int>& labels, int k) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, pts.cols());
    std::vector<int> cnt(k, 0);
    for (int i = 0; i < pts.rows(); ++i) {
        c.row(labels[i]) += pts.row(i);
        ++cnt[labels[i]];
    }
    for (int a = 0; a < k; ++a)
        if (cnt[a]) c.row(a) /= cnt[a];
    return c;
}

// Scatter-matrix trace form of Calinski-Harabasz.
inline double calinski_harabasz(const Eigen::MatrixXd& pts, const std::vector<int>& labels) {
    const int n = static_cast<int>(pts.rows());
    int k = 1 + *std::max_element(labels.begin(), labels.end());
    Eigen::RowVectorXd overall = pts.colwise().sum() / n;
    Eigen::MatrixXd c = centroids(pts, labels, k);
    std::vector<int> cnt(k, 0);
    for (int l : labels) ++cnt[l];
    double between = 0, within = 0;
    for (int a = 0; a < k; ++a)
        between += cnt[a] * (c.row(a) - overall).squaredNorm();
    for (int i = 0; i < n; ++i)
        within += (pts.row(i) - c.row(labels[i])).squaredNorm();
    return (between / (k - 1)) / (within / (n - k));
}

inline double davies_bouldin(const Eigen::MatrixXd& pts, const std::vector<int>& labels) {
    int k = 1 + *std::max_element(labels.begin(), labels.end());
    Eigen::MatrixXd c = centroids(pts, labels, k);
    std::vector<int> cnt(k, 0);
    std::vector<double> s(k, 0.0);
    for (int i = 0; i < pts.rows(); ++i) {
        s[labels[i]] += (pts.row(i) - c.row(labels[i])).norm();
        ++cnt[labels[i]];
    }
    for (int a = 0; a < k; ++a) s[a] /= cnt[a];
    double total = 0.0;
    for (int a = 0; a < k; ++a) {
        double worst = 0.0;
        for (int b = 0; b < k; ++b)
            if (b != a)
                worst = std::max(worst, (s[a] + s[b]) / (c.row(a) - c.row(b)).norm());
        total += worst;
    }
    return total / k;
}

inline double intra_inter(const Eigen::MatrixXd& pts, const std::vector<int>& labels,
                          const Eigen::MatrixXd& centers) {
    double intra = 0.0;
    for (int i = 0; i < pts.rows(); ++i)
        intra += (pts.row(i) - centers.row(labels[i])).norm();
    intra /= pts.rows();
    double inter = 0.0;
    int pairs = 0;
    for (int a = 0; a < centers.rows(); ++a)
        for (int b = a + 1; b < centers.rows(); ++b) {
            inter += (centers.row(a) - centers.row(b)).norm();
            ++pairs;
        }
    return intra / (inter / pairs);
}

// Pair-counting ARI, independent of the contingency-table route.
inline double adjusted_rand_index(const std::vector<int>& x, const std::vector<int>& y) {
    double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) {
            bool sx = x[i] == x[j], sy = y[i] == y[j];
            if (sx && sy) ++n11;
            else if (!sx && !sy) ++n00;
            else if (sx) ++n10;
            else ++n01;
        }
    double num = 2.0 * (n11 * n00 - n10 * n01);
    double den = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
    if (den == 0.0) return 1.0;
    return num / den;
}

// Exhaustive 2-partition optimum under the squared-Euclidean k-means objective.
inline double best_two_partition_sq(const Eigen::MatrixXd& pts, std::vector<int>* best_labels = nullptr) {
    const int n = static_cast<int>(pts.rows());
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1;
        Eigen::MatrixXd c = centroids(pts, labels, 2);
        double obj = 0.0;
        for (int i = 0; i < n; ++i) obj += (pts.row(i) - c.row(labels[i])).squaredNorm();
        if (obj < best) {
            best = obj;
            if (best_labels) *best_labels = labels;
        }
    }
    return best;
}

// Exhaustive 2-partition optimum under per-coordinate medians and L1 distance.
inline double best_two_partition_l1(const Eigen::MatrixXd& pts) {
    const int n = static_cast<int>(pts.rows());
    const int dim = static_cast<int>(pts.cols());
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1;
        double obj = 0.0;
        for (int c = 0; c < 2; ++c) {
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (labels[i] == c) members.push_back(i);
            for (int d = 0; d < dim; ++d) {
                std::vector<double> vals;
                for (int i : members) vals.push_back(pts(i, d));
                std::sort(vals.begin(), vals.end());
                size_t m = vals.size();
                double med = (m % 2) ? vals[m / 2] : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
                for (int i : members) obj += std::abs(pts(i, d) - med);
            }
        }
        best = std::min(best, obj);
    }
    return best;
}

// Exhaustive medoid-set optimum (all C(n,k) subsets, Euclidean).
inline double best_medoid_objective(const Eigen::MatrixXd& pts, int k,
                                    std::vector<std::vector<int>>* optimal_sets = nullptr) {
    const int n = static_cast<int>(pts.rows());
    std::vector<int> idx(k);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> sets;
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        double obj = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (int m : comb) d = std::min(d, dist(pts, i, m));
            obj += d;
        }
        if (obj < best - 1e-12) {
            best = obj;
            sets.clear();
            sets.push_back(comb);
        } else if (std::abs(obj - best) <= 1e-12) {
            sets.push_back(comb);
        }
        int pos = k - 1;
        while (pos >= 0 && comb[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int i = pos + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
    }
    if (optimal_sets) *optimal_sets = sets;
    return best;
}

// Cyclic Jacobi full eigendecomposition of a symmetric matrix; values ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace oracle
