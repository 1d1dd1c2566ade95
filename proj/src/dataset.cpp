#include "asc/dataset.hpp"
#include "asc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>
#include <vector>

namespace asc {

void validate_constraints(const ConstraintSets& c, int n) {
    std::unordered_set<int> must(c.must_link.begin(), c.must_link.end());
    for (int i : c.cannot_link) {
        if (must.count(i))
            throw InputError("constraint index " + std::to_string(i) +
                             " appears in both must_link and cannot_link");
    }
    auto check_range = [n](const std::vector<int>& v, const char* name) {
        for (int i : v) {
            if (i < 0 || i >= n)
                throw InputError(std::string(name) + " index " + std::to_string(i) +
                                 " out of range for n=" + std::to_string(n));
        }
    };
    check_range(c.must_link, "must_link");
    check_range(c.cannot_link, "cannot_link");
}

namespace {

// Hand-rolled samplers so generated bundles are bit-identical for a given
// seed independent of the standard library's distribution internals.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    while (u1 <= 1e-300) u1 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Knuth; rates here are small so the product loop is fine.
int poisson(std::mt19937_64& rng, double rate) {
    if (rate <= 0.0) return 0;
    double limit = std::exp(-rate);
    double prod = uniform01(rng);
    int k = 0;
    while (prod > limit) {
        prod *= uniform01(rng);
        ++k;
    }
    return k;
}

} // namespace

SyntheticBundle generate_synthetic(const SyntheticSpec& spec) {
    if (spec.clusters < 2)
        throw ConfigError("synthetic spec needs at least 2 clusters");
    if (spec.n < 10 * spec.clusters)
        throw ConfigError("synthetic spec needs n >= 10*clusters (got n=" +
                          std::to_string(spec.n) + ", clusters=" +
                          std::to_string(spec.clusters) + ")");

    std::vector<int> num_groups = spec.numeric_groups;
    std::vector<int> txt_groups = spec.text_groups;
    if (num_groups.empty())
        for (int c = 0; c < spec.clusters; ++c) num_groups.push_back(c);
    if (txt_groups.empty())
        for (int c = 0; c < spec.clusters; ++c) txt_groups.push_back(c);
    if (static_cast<int>(num_groups.size()) != spec.clusters ||
        static_cast<int>(txt_groups.size()) != spec.clusters)
        throw ConfigError("separability group lists must have one entry per cluster");

    for (int a = 0; a < spec.clusters; ++a)
        for (int b = a + 1; b < spec.clusters; ++b)
            if (num_groups[a] == num_groups[b] && txt_groups[a] == txt_groups[b])
                throw ConfigError("clusters " + std::to_string(a) + " and " +
                                  std::to_string(b) +
                                  " are separable under neither modality");

    if (spec.numeric_outlier_fraction < 0.0 || spec.numeric_outlier_fraction > 1.0)
        throw ConfigError("numeric outlier fraction must lie in [0, 1]");

    const int n = spec.n;
    const int k = spec.clusters;
    // One mean dimension per numeric group (at least 2 so the covariance is
    // full rank). Extra pure-noise dimensions only inflate within-group
    // Mahalanobis distances, and repeating the offsets across dimensions is
    // undone by the covariance whitening, so neither buys separation.
    const int num_numeric_groups =
        *std::max_element(num_groups.begin(), num_groups.end()) + 1;
    // Last dimension is a faint per-cluster drift so clusters sharing a
    // numeric group are not exact numeric replicas. The drift is jitter-sized
    // (invisible next to the group offsets) but survives whitening as a mild
    // separation, too weak for the numeric modality alone to resolve.
    const int p = std::max(2, num_numeric_groups) + 1;
    const int terms_per_group = 8;
    const int shared_terms = 6;
    const int num_text_groups = *std::max_element(txt_groups.begin(), txt_groups.end()) + 1;
    const int q = num_text_groups * terms_per_group + shared_terms;

    std::mt19937_64 rng(spec.seed);

    SyntheticBundle out;
    out.labels.resize(n);
    for (int i = 0; i < n; ++i)
        out.labels[i] = std::min(i * k / n, k - 1);

    // Numeric persona: the cluster whose numeric profile a sample follows, or
    // -1 for outliers whose numeric row is diffuse noise. Only clusters with
    // a unique text topic are corrupted, so the text modality can always put
    // the outliers back while the numeric modality alone cannot.
    std::vector<int> persona(n);
    for (int i = 0; i < n; ++i) persona[i] = out.labels[i];
    if (spec.numeric_outlier_fraction > 0.0) {
        for (int c = 0; c < k; ++c) {
            bool unique_topic = true;
            for (int d = 0; d < k; ++d)
                if (d != c && txt_groups[d] == txt_groups[c]) unique_topic = false;
            if (!unique_topic) continue;
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (out.labels[i] == c) members.push_back(i);
            int size = static_cast<int>(members.size());
            int corrupt = static_cast<int>(
                std::ceil(spec.numeric_outlier_fraction * size));
            int stride = std::max(1, size / std::max(1, corrupt));
            for (int j = 0; j < size && corrupt > 0; j += stride, --corrupt)
                persona[members[j]] = -1;
        }
    }

    // Points sharing a numeric group sit on a jittered lattice around the
    // group mean: on a lattice the nearest-neighbour spacing is a sizeable
    // fraction of the typical spacing, so the min-max rescale of the
    // max-distance/distance similarity keeps the bulk of within-group edges
    // well above the between-group ones instead of flattening everything
    // relative to one near-duplicate pair.
    const double spacing = spec.numeric_noise;
    const double jitter = 0.15 * spacing;
    const double drift = 0.25 * jitter;
    const int lattice_dims = 2;
    out.numeric.values.resize(n, p);
    std::vector<int> group_size(num_numeric_groups, 0);
    for (int i = 0; i < n; ++i)
        if (persona[i] >= 0) ++group_size[num_groups[persona[i]]];
    std::vector<int> side(num_numeric_groups);
    for (int g = 0; g < num_numeric_groups; ++g)
        side[g] = std::max(2, static_cast<int>(std::ceil(std::pow(
                                  double(group_size[g]), 1.0 / lattice_dims))));
    // evenly spread drift values among the clusters sharing each group
    std::vector<double> cluster_drift(k, 0.0);
    for (int g = 0; g < num_numeric_groups; ++g) {
        std::vector<int> members;
        for (int c = 0; c < k; ++c)
            if (num_groups[c] == g) members.push_back(c);
        int m = static_cast<int>(members.size());
        for (int idx = 0; idx < m; ++idx)
            cluster_drift[members[idx]] =
                m == 1 ? 0.0 : drift * (2.0 * idx / (m - 1) - 1.0);
    }
    // Shuffle lattice slots within each group so clusters that share a group
    // interleave across the lattice instead of occupying disjoint halves.
    std::vector<int> slot(n);
    {
        std::vector<std::vector<int>> pool(num_numeric_groups);
        for (int g = 0; g < num_numeric_groups; ++g) {
            pool[g].resize(group_size[g]);
            for (int s = 0; s < group_size[g]; ++s) pool[g][s] = s;
            for (int s = group_size[g] - 1; s > 0; --s)
                std::swap(pool[g][s], pool[g][static_cast<int>(rng() % (s + 1))]);
        }
        std::vector<int> next(num_numeric_groups, 0);
        for (int i = 0; i < n; ++i) {
            if (persona[i] < 0) {
                slot[i] = -1;
                continue;
            }
            int g = num_groups[persona[i]];
            slot[i] = pool[g][next[g]++];
        }
    }
    const int max_side = *std::max_element(side.begin(), side.end());
    auto draw_point = [&](int i) {
        if (persona[i] < 0) {
            // diffuse outlier: uniform over the envelope of all group blobs
            const double extent = 0.6 * max_side * spacing;
            for (int d = 0; d < p; ++d) {
                double lo = -extent;
                double hi = (d < num_numeric_groups ? 8.0 : 0.0) + extent;
                out.numeric.values(i, d) = lo + (hi - lo) * uniform01(rng);
            }
            return;
        }
        int g = num_groups[persona[i]];
        int s = slot[i];
        for (int d = 0; d < p - 1; ++d) {
            double mu = (d == g) ? 8.0 : 0.0;
            double cell = 0.0;
            if (d < lattice_dims) {
                cell = double(s % side[g]) - 0.5 * (side[g] - 1);
                s /= side[g];
            }
            out.numeric.values(i, d) =
                mu + spacing * cell + jitter * (2.0 * uniform01(rng) - 1.0);
        }
        out.numeric.values(i, p - 1) =
            cluster_drift[persona[i]] + jitter * (2.0 * uniform01(rng) - 1.0);
    };
    for (int i = 0; i < n; ++i) {
        out.numeric.samples.push_back("s" + std::to_string(i));
        draw_point(i);
    }
    for (int pass = 0; pass < 20; ++pass) {
        // whitening transform from the current sample covariance
        Eigen::VectorXd mean = out.numeric.values.colwise().mean();
        Eigen::MatrixXd centered = out.numeric.values.rowwise() - mean.transpose();
        Eigen::MatrixXd sigma = centered.transpose() * centered / double(n - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
        Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-12).cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd whiten = es.eigenvectors() * inv_sqrt.asDiagonal() *
                                 es.eigenvectors().transpose();
        Eigen::MatrixXd white = out.numeric.values * whiten;

        auto min_dist_to_others = [&](int i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < n; ++j)
                if (j != i) best = std::min(best, (white.row(i) - white.row(j)).norm());
            return best;
        };
        // median whitened nearest-neighbour spacing sets the scale
        std::vector<double> nn(n);
        for (int i = 0; i < n; ++i) nn[i] = min_dist_to_others(i);
        std::vector<double> sorted = nn;
        std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
        const double floor_dist = 0.6 * sorted[n / 2];

        bool clean = true;
        for (int i = 0; i < n; ++i) {
            if (nn[i] >= floor_dist) continue;
            clean = false;
            Eigen::RowVectorXd keep = out.numeric.values.row(i);
            double best_gain = nn[i];
            for (int attempt = 0; attempt < 30; ++attempt) {
                draw_point(i);
                white.row(i) = out.numeric.values.row(i) * whiten;
                double d = min_dist_to_others(i);
                if (d > best_gain) {
                    best_gain = d;
                    keep = out.numeric.values.row(i);
                }
                if (d >= floor_dist) break;
            }
            out.numeric.values.row(i) = keep;
            white.row(i) = keep * whiten;
        }
        if (clean) break;
    }
    for (int d = 0; d < p; ++d)
        out.numeric.features.push_back("Var" + std::to_string(d + 1));

    out.text.samples = out.numeric.samples;
    for (int g = 0; g < num_text_groups; ++g)
        for (int t = 0; t < terms_per_group; ++t)
            out.text.lexicon.push_back("group" + std::to_string(g) + "_term" + std::to_string(t));
    for (int t = 0; t < shared_terms; ++t)
        out.text.lexicon.push_back("shared_term" + std::to_string(t));

    // Clusters sharing a topic lean on different halves of its vocabulary, a
    // faint sub-topic accent: far too weak for the text modality alone to
    // split them, but enough that the fused graph does not see them as exact
    // text replicas.
    std::vector<int> tilt(k, -1);
    for (int g = 0; g < num_text_groups; ++g) {
        std::vector<int> members;
        for (int c = 0; c < k; ++c)
            if (txt_groups[c] == g) members.push_back(c);
        if (members.size() > 1)
            for (std::size_t idx = 0; idx < members.size(); ++idx)
                tilt[members[idx]] = static_cast<int>(idx % 2);
    }

    // Each document uses a random subset of its topic's vocabulary, so
    // same-topic documents overlap only partially and the text similarity is
    // informative without being artificially clean.
    out.text.counts.resize(n, q);
    for (int i = 0; i < n; ++i) {
        int c = out.labels[i];
        int g = txt_groups[c];
        for (int j = 0; j < q; ++j) {
            double rate;
            int topic = j / terms_per_group;
            if (j >= num_text_groups * terms_per_group)
                rate = 0.5;
            else if (topic == g) {
                double activate = 0.4;
                if (tilt[c] >= 0) {
                    bool preferred = (j % terms_per_group < terms_per_group / 2) ==
                                     (tilt[c] == 0);
                    activate = preferred ? 0.65 : 0.15;
                }
                rate = uniform01(rng) < activate ? 9.0 : 0.15;
            } else {
                rate = 0.15 * spec.text_dispersion;
            }
            out.text.counts(i, j) = poisson(rng, rate);
        }
    }

    for (int i = 0; i < n; ++i) {
        if (out.labels[i] == 0) out.constraints.must_link.push_back(i);
        if (out.labels[i] == k - 1) out.constraints.cannot_link.push_back(i);
    }
    return out;
}

} // namespace asc
