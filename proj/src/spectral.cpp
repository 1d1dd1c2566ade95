#include "asc/spectral.hpp"
#include "asc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace asc {

Eigen::VectorXd degree_vector(const Eigen::MatrixXd& w) {
    const int n = static_cast<int>(w.rows());
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += w(i, j); // fixed order, reproducible
        d(i) = s;
    }
    return d;
}

Eigen::MatrixXd laplacian(const Eigen::MatrixXd& w, const Eigen::VectorXd& degrees,
                          LaplacianKind kind) {
    const int n = static_cast<int>(w.rows());
    Eigen::MatrixXd l = -w;
    l.diagonal() += degrees;
    if (kind == LaplacianKind::unnormalized) return l;

    Eigen::VectorXd scale(n);
    for (int i = 0; i < n; ++i)
        scale(i) = degrees(i) > 0.0 ? 1.0 / std::sqrt(degrees(i)) : 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) l(i, j) *= scale(i) * scale(j);
    return l;
}

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& w, LaplacianKind kind,
                                     int count) {
    const int n = static_cast<int>(w.rows());
    if (count < 1 || count > n)
        throw ConfigError("eigendecompose: count must lie in [1,n]");

    Eigen::VectorXd degrees = degree_vector(w);
    Eigen::MatrixXd l = laplacian(w, degrees, kind);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    if (es.info() != Eigen::Success)
        throw NumericError("Laplacian eigendecomposition did not converge");

    SpectralDecomposition dec;
    dec.kind = kind;
    dec.degrees = degrees;
    dec.eigenvalues = es.eigenvalues().head(count);
    dec.eigenvectors = es.eigenvectors().leftCols(count);

    if (kind == LaplacianKind::random_walk) {
        // L_sym u = lambda u  with  v = D^{-1/2} u  solves  L v = lambda D v.
        Eigen::VectorXd scale(n);
        for (int i = 0; i < n; ++i)
            scale(i) = degrees(i) > 0.0 ? 1.0 / std::sqrt(degrees(i)) : 0.0;
        for (int c = 0; c < count; ++c) {
            dec.eigenvectors.col(c).array() *= scale.array();
            double norm = dec.eigenvectors.col(c).norm();
            if (norm > 0.0) dec.eigenvectors.col(c) /= norm;
        }
    }

    for (int c = 0; c < count; ++c) {
        double tol = 1e-12 * dec.eigenvectors.col(c).cwiseAbs().maxCoeff();
        for (int i = 0; i < n; ++i) {
            double v = dec.eigenvectors(i, c);
            if (std::abs(v) > tol) {
                if (v < 0.0) dec.eigenvectors.col(c) *= -1.0;
                break;
            }
        }
    }

    double max_ev = dec.eigenvalues(count - 1);
    double zero_tol = max_ev > 0.0 ? 1e-8 * max_ev : 1e-12;
    for (int c = 0; c < count; ++c)
        if (dec.eigenvalues(c) < zero_tol) ++dec.zero_multiplicity;
    return dec;
}

EigengapReport eigengap_candidates(const SpectralDecomposition& dec, int window) {
    if (window < 3) throw ConfigError("eigengap window must be at least 3");
    const int total = static_cast<int>(dec.eigenvalues.size());

    double max_ev = dec.eigenvalues(total - 1);
    double zero_tol = max_ev > 0.0 ? 1e-8 * max_ev : 1e-12;

    EigengapReport rep;
    rep.window = window;
    int start = 0;
    while (start < total && dec.eigenvalues(start) < zero_tol) ++start;
    rep.zeros_removed = start;
    for (int i = start; i < total && static_cast<int>(rep.eigenvalues.size()) < window; ++i)
        rep.eigenvalues.push_back(dec.eigenvalues(i));
    if (static_cast<int>(rep.eigenvalues.size()) < 2)
        throw NumericError("eigengap: not enough non-zero eigenvalues in window");

    for (size_t i = 0; i + 1 < rep.eigenvalues.size(); ++i)
        rep.gaps.push_back(rep.eigenvalues[i + 1] - rep.eigenvalues[i]);

    double mean = 0.0;
    for (double g : rep.gaps) mean += g;
    mean /= rep.gaps.size();
    double var = 0.0;
    for (double g : rep.gaps) var += (g - mean) * (g - mean);
    double stdev = std::sqrt(var / rep.gaps.size());
    double spike = mean + 2.0 * stdev;

    for (size_t i = 0; i < rep.gaps.size(); ++i) {
        int k = static_cast<int>(i) + 1 + rep.zeros_removed;
        if (rep.gaps[i] > spike && k >= 2) rep.candidates.push_back(k);
    }
    if (rep.candidates.empty()) {
        size_t arg = 0;
        for (size_t i = 1; i < rep.gaps.size(); ++i)
            if (rep.gaps[i] > rep.gaps[arg]) arg = i;
        rep.candidates.push_back(
            std::max(2, static_cast<int>(arg) + 1 + rep.zeros_removed));
    }
    return rep;
}

Embedding spectral_embedding(const SpectralDecomposition& dec, int k,
                             bool row_normalize) {
    if (k < 1) throw ConfigError("embedding dimension must be >= 1");
    if (k + 1 > dec.eigenvalues.size())
        throw ConfigError("embedding dimension " + std::to_string(k) +
                          " exceeds retained eigenpairs");
    Embedding emb;
    emb.k = k;
    emb.coordinates = dec.eigenvectors.middleCols(1, k); // e_2 .. e_{k+1}
    if (row_normalize) {
        for (int i = 0; i < emb.coordinates.rows(); ++i) {
            double norm = emb.coordinates.row(i).norm();
            if (norm > 0.0) emb.coordinates.row(i) /= norm;
        }
    }
    return emb;
}

} // namespace asc
