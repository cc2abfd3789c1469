#include "rsolab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "rsolab/common.hpp"

namespace rso::spectral {

namespace {

void check_cap(int n) {
    if (n > kDenseCap)
        fail(errc::capacity, "eigendecompose: n=" + std::to_string(n) + " exceeds dense cap " +
                                 std::to_string(kDenseCap));
    if (n < 1) fail(errc::invalid_argument, "eigendecompose: empty operator");
}

}  // namespace

Spectrum eigendecompose(const magnetics::DiscreteHamiltonian& H) {
    check_cap(H.n);
    Spectrum s;
    s.fingerprint = H.fingerprint;
    if (H.is_real()) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(H.n, H.n);
        for (int i = 0; i < H.n; ++i) M(i, i) = H.diag[i];
        for (const auto& hop : H.hops) {
            M(hop.i, hop.j) = hop.v.real();
            M(hop.j, hop.i) = hop.v.real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
        if (es.info() != Eigen::Success) fail(errc::numeric, "eigendecompose: solver failed");
        s.eigenvalues = es.eigenvalues();
        s.eigenvectors = es.eigenvectors().cast<std::complex<double>>();
        return s;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.to_dense());
    if (es.info() != Eigen::Success) fail(errc::numeric, "eigendecompose: solver failed");
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    return s;
}

Eigen::VectorXd eigenvalues_only(const magnetics::DiscreteHamiltonian& H) {
    check_cap(H.n);
    if (H.is_real()) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(H.n, H.n);
        for (int i = 0; i < H.n; ++i) M(i, i) = H.diag[i];
        for (const auto& hop : H.hops) {
            M(hop.i, hop.j) = hop.v.real();
            M(hop.j, hop.i) = hop.v.real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) fail(errc::numeric, "eigenvalues_only: solver failed");
        return es.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.to_dense(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(errc::numeric, "eigenvalues_only: solver failed");
    return es.eigenvalues();
}

double max_residual(const magnetics::DiscreteHamiltonian& H, const Spectrum& s) {
    Eigen::MatrixXcd M = H.to_dense();
    Eigen::MatrixXcd R = M * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal();
    double worst = 0.0;
    for (int i = 0; i < R.cols(); ++i) worst = std::max(worst, R.col(i).norm());
    return worst;
}

double trace_function(const Eigen::VectorXd& eigenvalues, const testfun::TestFunction& f) {
    KahanSum acc;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        double lam = eigenvalues(i);
        if (!f.defined_at(lam))
            fail(errc::invalid_argument,
                 "trace_function: eigenvalue " + std::to_string(lam) + " outside the domain of f");
        acc.add(f(lam));
    }
    return acc.value();
}

double trace_function(const Spectrum& s, const testfun::TestFunction& f) {
    return trace_function(s.eigenvalues, f);
}

namespace {

// Banded lower Cholesky of a Hermitian positive definite matrix given by a
// DiscreteHamiltonian shifted by -E. Storage: L(j*(b+1) + r) = L_{j+r, j}.
struct BandedCholesky {
    int n = 0;
    int b = 0;
    std::vector<std::complex<double>> L;

    static BandedCholesky factor(const magnetics::DiscreteHamiltonian& H, double E) {
        BandedCholesky ch;
        ch.n = H.n;
        ch.b = H.bandwidth();
        const int w = ch.b + 1;
        ch.L.assign(static_cast<std::size_t>(ch.n) * w, {0.0, 0.0});
        for (int i = 0; i < H.n; ++i) ch.L[static_cast<std::size_t>(i) * w] = H.diag[i] - E;
        for (const auto& hop : H.hops)
            ch.L[static_cast<std::size_t>(hop.i) * w + (hop.j - hop.i)] = std::conj(hop.v);
        // In-place banded LL^H.
        for (int j = 0; j < ch.n; ++j) {
            std::complex<double>* colj = &ch.L[static_cast<std::size_t>(j) * w];
            double dj = colj[0].real();
            for (int k = std::max(0, j - ch.b); k < j; ++k) {
                const auto& ljk = ch.L[static_cast<std::size_t>(k) * w + (j - k)];
                dj -= std::norm(ljk);
            }
            if (!(dj > 0.0))
                fail(errc::numeric,
                     "resolvent solve: H - E is not positive definite (pivot at row " +
                         std::to_string(j) + "); E must lie strictly below the spectrum");
            double ljj = std::sqrt(dj);
            colj[0] = ljj;
            int imax = std::min(ch.n - 1, j + ch.b);
            for (int i = j + 1; i <= imax; ++i) {
                std::complex<double> t = colj[i - j];
                for (int k = std::max(0, i - ch.b); k < j; ++k) {
                    const auto& lik = ch.L[static_cast<std::size_t>(k) * w + (i - k)];
                    const auto& ljk = ch.L[static_cast<std::size_t>(k) * w + (j - k)];
                    t -= lik * std::conj(ljk);
                }
                colj[i - j] = t / ljj;
            }
        }
        return ch;
    }

    // x <- (H - E)^{-1} x
    void solve_in_place(std::vector<std::complex<double>>& x) const {
        const int w = b + 1;
        for (int j = 0; j < n; ++j) {
            std::complex<double> s = x[j];
            for (int k = std::max(0, j - b); k < j; ++k)
                s -= L[static_cast<std::size_t>(k) * w + (j - k)] * x[k];
            x[j] = s / L[static_cast<std::size_t>(j) * w].real();
        }
        for (int j = n - 1; j >= 0; --j) {
            std::complex<double> s = x[j];
            int imax = std::min(n - 1, j + b);
            for (int i = j + 1; i <= imax; ++i)
                s -= std::conj(L[static_cast<std::size_t>(j) * w + (i - j)]) * x[i];
            x[j] = s / L[static_cast<std::size_t>(j) * w].real();
        }
    }
};

}  // namespace

double trace_resolvent_power_solve(const magnetics::DiscreteHamiltonian& H, double E, int m) {
    if (m < 0) fail(errc::invalid_argument, "trace_resolvent_power: m must be >= 0");
    if (m == 0) return static_cast<double>(H.n);
    BandedCholesky ch = BandedCholesky::factor(H, E);
    KahanSum acc;
    std::vector<std::complex<double>> x(H.n);
    for (int j = 0; j < H.n; ++j) {
        std::fill(x.begin(), x.end(), std::complex<double>(0.0, 0.0));
        x[j] = 1.0;
        for (int k = 0; k < m; ++k) ch.solve_in_place(x);
        acc.add(x[j].real());
    }
    return acc.value();
}

double trace_resolvent_power_eigen(const Spectrum& s, double E, int m) {
    if (m < 0) fail(errc::invalid_argument, "trace_resolvent_power: m must be >= 0");
    if (s.eigenvalues.size() == 0) fail(errc::invalid_argument, "trace_resolvent_power: empty spectrum");
    if (!(E < s.eigenvalues(0)))
        fail(errc::numeric, "trace_resolvent_power: E must lie strictly below the spectrum");
    if (m == 0) return static_cast<double>(s.eigenvalues.size());
    KahanSum acc;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        acc.add(std::pow(s.eigenvalues(i) - E, -m));
    return acc.value();
}

double local_trace(const Spectrum& s, const geometry::SiteGrid& grid,
                   const testfun::TestFunction& f, const geometry::Region& F) {
    if (grid.size() != s.eigenvectors.rows())
        fail(errc::invalid_argument, "local_trace: grid does not match spectrum");
    std::vector<int> sites;
    for (int i = 0; i < grid.size(); ++i)
        if (F.contains(grid.position(i))) sites.push_back(i);
    KahanSum acc;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        double lam = s.eigenvalues(k);
        if (!f.defined_at(lam))
            fail(errc::invalid_argument, "local_trace: eigenvalue outside the domain of f");
        double fl = f(lam);
        if (fl == 0.0) continue;
        double w = 0.0;
        for (int x : sites) w += std::norm(s.eigenvectors(x, k));
        acc.add(fl * w);
    }
    return acc.value();
}

double weighted_local_trace(const Spectrum& s, const std::vector<std::pair<int, double>>& weights,
                            const std::function<double(double)>& phi) {
    KahanSum acc;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        double fl = phi(s.eigenvalues(k));
        if (fl == 0.0) continue;
        double w = 0.0;
        for (const auto& [x, wx] : weights) w += wx * std::norm(s.eigenvectors(x, k));
        acc.add(fl * w);
    }
    return acc.value();
}

double offdiag_block_norm(const Spectrum& s, const geometry::SiteGrid& grid, double E, int m,
                          const geometry::Region& F, const geometry::Region& G, BlockNorm which) {
    if (m < 1) fail(errc::invalid_argument, "offdiag_block_norm: m must be >= 1");
    if (!(E < s.eigenvalues(0)))
        fail(errc::numeric, "offdiag_block_norm: E must lie strictly below the spectrum");
    std::vector<int> fi, gi;
    for (int i = 0; i < grid.size(); ++i) {
        auto x = grid.position(i);
        if (F.contains(x)) fi.push_back(i);
        if (G.contains(x)) gi.push_back(i);
    }
    if (fi.empty() || gi.empty())
        fail(errc::invalid_argument, "offdiag_block_norm: empty block (no mesh sites in F or G)");
    const Eigen::Index n = s.eigenvalues.size();
    Eigen::MatrixXcd VF(fi.size(), n), VG(gi.size(), n);
    for (std::size_t r = 0; r < fi.size(); ++r) VF.row(r) = s.eigenvectors.row(fi[r]);
    for (std::size_t r = 0; r < gi.size(); ++r) VG.row(r) = s.eigenvectors.row(gi[r]);
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::pow(s.eigenvalues(i) - E, -m);
    Eigen::MatrixXcd M = VF * d.asDiagonal() * VG.adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    if (which == BlockNorm::op) return svd.singularValues()(0);
    return svd.singularValues().sum();
}

HFCheck hellmann_feynman_check(const magnetics::DiscreteHamiltonian& H,
                               const std::vector<double>& W, const testfun::TestFunction& f,
                               double lambda, double step) {
    if (static_cast<int>(W.size()) != H.n)
        fail(errc::invalid_argument, "hellmann_feynman_check: weight length mismatch");
    if (!(step > 0.0)) fail(errc::invalid_argument, "hellmann_feynman_check: step must be positive");
    auto shifted = [&](double t) {
        magnetics::DiscreteHamiltonian Ht = H;
        for (int i = 0; i < H.n; ++i) Ht.diag[i] += t * W[i];
        return Ht;
    };
    HFCheck out;
    Spectrum s = eigendecompose(shifted(lambda));
    std::vector<std::pair<int, double>> weights;
    for (int i = 0; i < H.n; ++i)
        if (W[i] != 0.0) weights.emplace_back(i, W[i]);
    out.analytic = weighted_local_trace(s, weights, [&](double x) { return f.deriv(x); });
    double plus = trace_function(eigenvalues_only(shifted(lambda + step)), f);
    double minus = trace_function(eigenvalues_only(shifted(lambda - step)), f);
    out.numeric = (plus - minus) / (2.0 * step);
    return out;
}

}  // namespace rso::spectral
