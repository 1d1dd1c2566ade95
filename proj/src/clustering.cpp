#include "asc/clustering.hpp"
#include "asc/errors.hpp"
#include "asc/evaluation.hpp"
#include "asc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace asc {

ClusterMethod cluster_method_from_string(const std::string& name) {
    if (name == "kmeans") return ClusterMethod::kmeans;
    if (name == "kmedians") return ClusterMethod::kmedians;
    if (name == "kmedoids") return ClusterMethod::kmedoids;
    throw ConfigError("unknown clustering method: " + name);
}

std::string to_string(ClusterMethod m) {
    switch (m) {
        case ClusterMethod::kmeans: return "kmeans";
        case ClusterMethod::kmedians: return "kmedians";
        case ClusterMethod::kmedoids: return "kmedoids";
    }
    return "?";
}

namespace {

double sq_l2(const Eigen::MatrixXd& pts, int i, const Eigen::RowVectorXd& c) {
    return (pts.row(i) - c).squaredNorm();
}

double l1(const Eigen::MatrixXd& pts, int i, const Eigen::RowVectorXd& c) {
    return (pts.row(i) - c).cwiseAbs().sum();
}

// Greedy farthest-point seeding; the first center is a seeded random row.
// random_init instead draws k distinct rows, used on alternate restarts so
// small instances see more than the n farthest-point configurations.
Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& pts, int k,
                             std::mt19937_64& rng, bool use_l1, bool random_init) {
    const int n = static_cast<int>(pts.rows());
    Eigen::MatrixXd centers(k, pts.cols());
    if (random_init) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int c = 0; c < k; ++c) {
            int pick = c + static_cast<int>(rng() % (n - c));
            std::swap(pool[c], pool[pick]);
            centers.row(c) = pts.row(pool[c]);
        }
        return centers;
    }
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    int first = static_cast<int>(rng() % n);
    centers.row(0) = pts.row(first);
    for (int c = 1; c < k; ++c) {
        int far = 0;
        double far_dist = -1.0;
        for (int i = 0; i < n; ++i) {
            double d = use_l1 ? l1(pts, i, centers.row(c - 1))
                              : sq_l2(pts, i, centers.row(c - 1));
            min_dist[i] = std::min(min_dist[i], d);
            if (min_dist[i] > far_dist) {
                far_dist = min_dist[i];
                far = i;
            }
        }
        centers.row(c) = pts.row(far);
    }
    return centers;
}

ClusterAssignment lloyd_once(const Eigen::MatrixXd& pts, int k, std::uint64_t seed,
                             int max_iter, bool use_l1, bool random_init) {
    const int n = static_cast<int>(pts.rows());
    const int dim = static_cast<int>(pts.cols());
    std::mt19937_64 rng(seed);

    ClusterAssignment a;
    a.k = k;
    a.seed = seed;
    a.method = use_l1 ? ClusterMethod::kmedians : ClusterMethod::kmeans;
    a.centers = seed_centers(pts, k, rng, use_l1, random_init);
    a.labels.assign(n, -1);

    auto dist = [&](int i, int c) {
        return use_l1 ? l1(pts, i, a.centers.row(c)) : sq_l2(pts, i, a.centers.row(c));
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = dist(i, 0);
            for (int c = 1; c < k; ++c) {
                double d = dist(i, c);
                if (d < best_d) { // ties keep the lowest index
                    best_d = d;
                    best = c;
                }
            }
            if (a.labels[i] != best) {
                a.labels[i] = best;
                changed = true;
            }
        }

        // Reseed any empty cluster from the globally worst-fitting point.
        std::vector<int> sizes(k, 0);
        for (int l : a.labels) ++sizes[l];
        for (int c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (sizes[a.labels[i]] <= 1) continue;
                double d = dist(i, a.labels[i]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far < 0) throw NumericError("cannot repair empty cluster");
            --sizes[a.labels[far]];
            a.labels[far] = c;
            sizes[c] = 1;
            a.centers.row(c) = pts.row(far);
            changed = true;
        }

        // Center update.
        for (int c = 0; c < k; ++c) {
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (a.labels[i] == c) members.push_back(i);
            if (use_l1) {
                for (int d = 0; d < dim; ++d) {
                    std::vector<double> vals;
                    vals.reserve(members.size());
                    for (int i : members) vals.push_back(pts(i, d));
                    std::sort(vals.begin(), vals.end());
                    size_t m = vals.size();
                    a.centers(c, d) = (m % 2) ? vals[m / 2]
                                              : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
                }
            } else {
                Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(dim);
                for (int i : members) mean += pts.row(i);
                a.centers.row(c) = mean / static_cast<double>(members.size());
            }
        }

        double obj = 0.0;
        for (int i = 0; i < n; ++i) obj += dist(i, a.labels[i]);
        a.objective = obj;
        a.objective_trace.push_back(obj);
        a.iterations = iter + 1;
        if (!changed) break;
    }
    return a;
}

ClusterAssignment lloyd(const Eigen::MatrixXd& pts, int k, std::uint64_t seed,
                        int max_iter, int restarts, bool use_l1) {
    const int n = static_cast<int>(pts.rows());
    if (k < 1) throw ConfigError("k must be >= 1");
    if (k > n) throw ConfigError("k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    if (restarts < 1) restarts = 1;

    ClusterAssignment best;
    for (int r = 0; r < restarts; ++r) {
        ClusterAssignment a = lloyd_once(pts, k, seed + 0x9e3779b97f4a7c15ULL * r,
                                         max_iter, use_l1, r % 2 == 1);
        if (r == 0 || a.objective < best.objective) best = std::move(a);
    }
    best.seed = seed;
    return best;
}

} // namespace

ClusterAssignment kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                         int max_iter, int restarts) {
    return lloyd(points, k, seed, max_iter, restarts, false);
}

ClusterAssignment kmedians(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                           int max_iter, int restarts) {
    return lloyd(points, k, seed, max_iter, restarts, true);
}

ClusterAssignment kmedoids_hill_climb(const Eigen::MatrixXd& points, int k,
                                      std::uint64_t seed, int max_iter) {
    const int n = static_cast<int>(points.rows());
    if (k < 1) throw ConfigError("k must be >= 1");
    if (k > n) throw ConfigError("k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));

    Eigen::MatrixXd dist = kernels::pairwise_euclidean(points);

    // Seeded draw of k distinct medoid rows.
    std::mt19937_64 rng(seed);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> medoids;
    for (int c = 0; c < k; ++c) {
        int pick = c + static_cast<int>(rng() % (n - c));
        std::swap(pool[c], pool[pick]);
        medoids.push_back(pool[c]);
    }

    auto objective_of = [&](const std::vector<int>& med) {
        double obj = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = dist(i, med[0]);
            for (int c = 1; c < k; ++c) best = std::min(best, dist(i, med[c]));
            obj += best;
        }
        return obj;
    };

    ClusterAssignment a;
    a.k = k;
    a.seed = seed;
    a.method = ClusterMethod::kmedoids;
    a.objective = objective_of(medoids);
    a.objective_trace.push_back(a.objective);

    std::vector<bool> is_medoid(n, false);
    for (int m : medoids) is_medoid[m] = true;

    for (int round = 0; round < max_iter; ++round) {
        double best_obj = a.objective;
        int best_slot = -1, best_cand = -1;
        for (int slot = 0; slot < k; ++slot) {
            int original = medoids[slot];
            for (int cand = 0; cand < n; ++cand) {
                if (is_medoid[cand]) continue;
                medoids[slot] = cand;
                double obj = objective_of(medoids);
                if (obj < best_obj) { // strict improvement only
                    best_obj = obj;
                    best_slot = slot;
                    best_cand = cand;
                }
            }
            medoids[slot] = original;
        }
        if (best_slot < 0) break;
        is_medoid[medoids[best_slot]] = false;
        is_medoid[best_cand] = true;
        medoids[best_slot] = best_cand;
        a.objective = best_obj;
        a.objective_trace.push_back(best_obj);
        a.iterations = round + 1;
    }

    a.labels.assign(n, 0);
    a.centers.resize(k, points.cols());
    for (int c = 0; c < k; ++c) a.centers.row(c) = points.row(medoids[c]);
    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = dist(i, medoids[0]);
        for (int c = 1; c < k; ++c)
            if (dist(i, medoids[c]) < best_d) {
                best_d = dist(i, medoids[c]);
                best = c;
            }
        a.labels[i] = best;
    }
    return a;
}

namespace {

ClusterAssignment run_method(const Eigen::MatrixXd& pts, int k,
                             const SelectKOptions& opts) {
    switch (opts.method) {
        case ClusterMethod::kmeans:
            return kmeans(pts, k, opts.seed, 100, opts.restarts);
        case ClusterMethod::kmedians:
            return kmedians(pts, k, opts.seed, 100, opts.restarts);
        case ClusterMethod::kmedoids:
            return kmedoids_hill_climb(pts, k, opts.seed);
    }
    throw ConfigError("unknown clustering method");
}

bool singleton_dominated(const ClusterAssignment& a) {
    std::vector<int> sizes(a.k, 0);
    for (int l : a.labels) ++sizes[l];
    int singles = 0;
    for (int s : sizes) singles += (s <= 1);
    return 2 * singles > a.k;
}

// Per-cluster gap/separation expression, evaluated verbatim and minimized.
double literal_score(const Eigen::MatrixXd& pts, const ClusterAssignment& a,
                     double gap) {
    Eigen::MatrixXd dist = kernels::pairwise_euclidean(pts);
    double worst = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < a.k; ++c) {
        std::vector<int> members;
        for (size_t i = 0; i < a.labels.size(); ++i)
            if (a.labels[i] == c) members.push_back(static_cast<int>(i));
        double intra = 0.0;
        if (members.size() > 1) {
            int pairs = 0;
            for (size_t x = 0; x < members.size(); ++x)
                for (size_t y = x + 1; y < members.size(); ++y) {
                    intra += dist(members[x], members[y]);
                    ++pairs;
                }
            intra /= pairs;
        }
        double sep = std::numeric_limits<double>::infinity();
        for (int o = 0; o < a.k; ++o)
            if (o != c)
                sep = std::min(sep, (a.centers.row(c) - a.centers.row(o)).norm());
        double denom = std::max(intra, sep);
        double term = denom > 0.0 ? std::abs(intra - sep) / denom : 0.0;
        worst = std::max(worst, gap + term);
    }
    return worst;
}

} // namespace

std::pair<KSelectionReport, ClusterAssignment>
select_k(const SpectralDecomposition& dec, const EigengapReport& gaps,
         const SelectKOptions& opts) {
    if (gaps.candidates.empty())
        throw ConfigError("select_k: no candidate cluster counts");

    double max_gap = 0.0;
    for (double g : gaps.gaps) max_gap = std::max(max_gap, g);

    auto gap_of = [&](int k) {
        int idx = k - gaps.zeros_removed - 1;
        if (idx < 0 || idx >= static_cast<int>(gaps.gaps.size())) return 0.0;
        return gaps.gaps[idx];
    };

    KSelectionReport report;
    report.candidates = gaps.candidates;

    ClusterAssignment best_assignment;
    ClusterAssignment fallback_assignment;
    int fallback_k = -1;
    double fallback_gap = -1.0;
    bool have_best = false;
    double best_score = 0.0;

    for (int k : gaps.candidates) {
        if (k > dec.eigenvalues.size() || k > static_cast<int>(dec.eigenvectors.rows()))
            continue; // not enough eigenpairs retained for this candidate
        // k clusters live in the k-1 informative eigenvectors e_2..e_k once the
        // trivial first eigenvector is discarded
        Embedding emb = spectral_embedding(dec, k - 1, opts.row_normalize);
        ClusterAssignment a = run_method(emb.coordinates, k, opts);
        double sil = silhouette(emb.coordinates, a.labels).mean;
        double gap = gap_of(k);
        double score = opts.literal_score
                           ? literal_score(emb.coordinates, a, gap)
                           : (max_gap > 0.0 ? gap / max_gap : 0.0) + sil;
        report.rows.push_back({k, gap, sil, score});

        if (gap > fallback_gap) {
            fallback_gap = gap;
            fallback_k = k;
            fallback_assignment = a;
        }
        if (singleton_dominated(a)) continue;
        bool better = !have_best ||
                      (opts.literal_score ? score < best_score : score > best_score);
        if (better) {
            have_best = true;
            best_score = score;
            report.chosen_k = k;
            best_assignment = std::move(a);
        }
    }

    if (!have_best) {
        if (fallback_k < 0)
            throw NumericError("select_k: no candidate could be clustered");
        report.degenerate = true;
        report.chosen_k = fallback_k;
        best_assignment = fallback_assignment;
    }
    return {report, best_assignment};
}

} // namespace asc
