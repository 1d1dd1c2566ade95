#include "asc/similarity.hpp"
#include "asc/errors.hpp"
#include "asc/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>

namespace asc {

CovarianceModel covariance_model(const NumericDataset& data) {
    const int n = data.n();
    const int p = data.p();
    if (n < 2) throw NumericError("covariance needs at least 2 samples");

    Eigen::MatrixXd centered = data.values.rowwise() - data.values.colwise().mean();
    CovarianceModel model;
    model.sigma = (centered.transpose() * centered) / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.sigma);
    if (es.info() != Eigen::Success)
        throw NumericError("covariance eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    double max_ev = ev.maxCoeff();
    if (max_ev <= 0.0)
        throw NumericError("degenerate covariance: dataset has no variance");

    double tol = 1e-12 * max_ev * p;
    Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(p);
    for (int i = 0; i < p; ++i) {
        if (ev(i) > tol) {
            inv_ev(i) = 1.0 / ev(i);
            ++model.rank;
        }
    }
    model.sigma_inv =
        es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
    return model;
}

double mahalanobis(const Eigen::VectorXd& xi, const Eigen::VectorXd& xj,
                   const CovarianceModel& model) {
    if (xi.size() != xj.size() || xi.size() != model.sigma.rows())
        throw InputError("mahalanobis: dimension mismatch");
    Eigen::VectorXd d = xi - xj;
    double quad = d.dot(model.sigma_inv * d);
    if (quad < -1e-10)
        throw NumericError("mahalanobis: negative quadratic form " + std::to_string(quad));
    return std::sqrt(quad < 0.0 ? 0.0 : quad);
}

SimilarityMatrix numeric_similarity_matrix(const NumericDataset& data) {
    const int n = data.n();
    if (n < 2) throw NumericError("similarity needs at least 2 samples");
    CovarianceModel model = covariance_model(data);
    Eigen::MatrixXd dist = kernels::pairwise_mahalanobis(data.values, model.sigma_inv);

    double max_dist = 0.0;
    double min_nonzero = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            max_dist = std::max(max_dist, dist(i, j));
            if (dist(i, j) > 0.0) min_nonzero = std::min(min_nonzero, dist(i, j));
        }
    if (max_dist <= 0.0)
        throw NumericError("numeric similarity: all samples coincide");

    SimilarityMatrix w;
    w.kind = SimilarityMatrix::Kind::numeric;
    w.values = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // Duplicate rows would divide by zero; cap them just above the
            // strongest finite similarity instead.
            double v = dist(i, j) > 0.0 ? max_dist / dist(i, j) : max_dist / min_nonzero;
            w.values(i, j) = v;
            w.values(j, i) = v;
        }
    return w;
}

Eigen::VectorXd inverse_document_frequency(const TextDataset& text) {
    const int q = text.q();
    if (q < 1) throw InputError("empty lexicon");
    const int n = text.n();
    Eigen::VectorXd idf(q);
    for (int t = 0; t < q; ++t) {
        int docs = 0;
        for (int i = 0; i < n; ++i)
            if (text.counts(i, t) > 0.0) ++docs;
        idf(t) = docs > 0 ? std::log(static_cast<double>(n) / docs) : 0.0;
    }
    return idf;
}

Eigen::MatrixXd tfidf_weights(const TextDataset& text) {
    Eigen::VectorXd idf = inverse_document_frequency(text);
    Eigen::MatrixXd h(text.n(), text.q());
    for (int i = 0; i < text.n(); ++i)
        for (int t = 0; t < text.q(); ++t)
            h(i, t) = std::log1p(text.counts(i, t)) * idf(t);
    return h;
}

SimilarityMatrix text_similarity_matrix(const TextDataset& text) {
    SimilarityMatrix w;
    w.kind = SimilarityMatrix::Kind::text;
    w.values = kernels::cosine_similarity(tfidf_weights(text));
    return w;
}

SimilarityMatrix rescale_offdiagonal(const SimilarityMatrix& w) {
    const int n = w.n();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                lo = std::min(lo, w.values(i, j));
                hi = std::max(hi, w.values(i, j));
            }
    SimilarityMatrix out = w;
    out.values.diagonal().setZero();
    if (!(hi > lo)) return out; // constant matrix, nothing to rescale
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) out.values(i, j) = (w.values(i, j) - lo) / (hi - lo);
    return out;
}

SimilarityMatrix fuse_similarity(const SimilarityMatrix& numeric,
                                 const SimilarityMatrix& text, double lambda) {
    if (numeric.values.rows() != text.values.rows() ||
        numeric.values.cols() != text.values.cols())
        throw InputError("fuse_similarity: shape mismatch");
    if (lambda < 0.0 || lambda > 1.0)
        throw ConfigError("fusion weight must lie in [0,1]");
    SimilarityMatrix w;
    w.kind = SimilarityMatrix::Kind::fused;
    w.lambda = lambda;
    w.values = lambda * numeric.values + (1.0 - lambda) * text.values;
    return w;
}

namespace {

struct Triple {
    int i, j, k;
};

// Deterministic bounded draw; modulo bias is irrelevant at these sizes.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

std::vector<Triple> build_triples(const ConstraintSets& c, std::size_t cap,
                                  std::uint64_t seed) {
    const auto& m = c.must_link;
    const auto& cl = c.cannot_link;
    if (m.size() < 2 || cl.empty())
        throw InputError("optimize_lambda: need at least one must-link pair and one cannot-link sample");

    const std::uint64_t pairs = static_cast<std::uint64_t>(m.size()) * (m.size() - 1) / 2;
    const std::uint64_t total = pairs * cl.size();
    std::vector<Triple> triples;
    if (total <= cap) {
        triples.reserve(total);
        for (size_t a = 0; a < m.size(); ++a)
            for (size_t b = a + 1; b < m.size(); ++b)
                for (size_t k = 0; k < cl.size(); ++k)
                    triples.push_back({m[a], m[b], cl[k]});
        return triples;
    }
    std::mt19937_64 rng(seed);
    triples.reserve(cap);
    for (std::size_t t = 0; t < cap; ++t) {
        std::uint64_t a = draw(rng, m.size());
        std::uint64_t b = draw(rng, m.size() - 1);
        if (b >= a) ++b; // distinct pair
        std::uint64_t k = draw(rng, cl.size());
        triples.push_back({m[a], m[b], cl[k]});
    }
    return triples;
}

} // namespace

LambdaSolution optimize_lambda(const SimilarityMatrix& numeric,
                               const SimilarityMatrix& text,
                               const ConstraintSets& constraints,
                               const LambdaOptions& opts) {
    if (opts.step <= 0.0 || opts.step > 1.0)
        throw ConfigError("lambda grid step must lie in (0,1]");
    const double steps = std::round(1.0 / opts.step);
    if (std::abs(steps * opts.step - 1.0) > 1e-9)
        throw ConfigError("lambda grid step must divide 1 evenly");
    const int m = static_cast<int>(steps);

    auto triples = build_triples(constraints, opts.max_triples, opts.seed);

    const Eigen::MatrixXd& nm = numeric.values;
    const Eigen::MatrixXd& tm = text.values;

    LambdaSolution sol;
    sol.grid.reserve(m + 1);
    int best_feasible = -1, best_any = -1;
    for (int g = 0; g <= m; ++g) {
        const double lam = static_cast<double>(g) / m;
        LambdaGridRow row;
        row.lambda = lam;
        std::size_t satisfied = 0;
        double must_sum = 0.0, cannot_sum = 0.0;
        for (const auto& t : triples) {
            double sij = lam * nm(t.i, t.j) + (1.0 - lam) * tm(t.i, t.j);
            double sik, sjk;
            if (opts.literal_rhs) {
                sik = nm(t.i, t.k);
                sjk = nm(t.j, t.k);
            } else {
                sik = lam * nm(t.i, t.k) + (1.0 - lam) * tm(t.i, t.k);
                sjk = lam * nm(t.j, t.k) + (1.0 - lam) * tm(t.j, t.k);
            }
            if (sij >= sik && sij >= sjk) ++satisfied;
            must_sum += sij;
            cannot_sum += 0.5 * (sik + sjk);
        }
        row.satisfied_fraction = static_cast<double>(satisfied) / triples.size();
        row.feasible = satisfied == triples.size();
        row.mean_must_link = must_sum / triples.size();
        row.mean_cannot_link = cannot_sum / triples.size();
        sol.grid.push_back(row);

        auto objective = [&](int idx) {
            double l = sol.grid[idx].lambda;
            return l * (1.0 - l);
        };
        if (row.feasible &&
            (best_feasible < 0 || objective(g) > objective(best_feasible)))
            best_feasible = g;
        if (best_any < 0 ||
            row.satisfied_fraction > sol.grid[best_any].satisfied_fraction ||
            (row.satisfied_fraction == sol.grid[best_any].satisfied_fraction &&
             objective(g) > objective(best_any)))
            best_any = g;
    }

    const int chosen = best_feasible >= 0 ? best_feasible : best_any;
    sol.lambda = sol.grid[chosen].lambda;
    sol.objective = sol.lambda * (1.0 - sol.lambda);
    sol.satisfied_fraction = sol.grid[chosen].satisfied_fraction;
    return sol;
}

} // namespace asc
