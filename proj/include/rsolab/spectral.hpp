#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rsolab/geometry.hpp"
#include "rsolab/magnetics.hpp"
#include "rsolab/testfun.hpp"

namespace rso::spectral {

// Dense path cap. Decompositions beyond this size are refused, not attempted.
inline constexpr int kDenseCap = 4096;

struct Spectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors;  // columns, orthonormal
    std::uint64_t fingerprint = 0;  // of the source operator
};

// Reference backend: dense Householder tridiagonalization (real path when
// the operator has no magnetic phases).
Spectrum eigendecompose(const magnetics::DiscreteHamiltonian& H);
Eigen::VectorXd eigenvalues_only(const magnetics::DiscreteHamiltonian& H);
// max_i ||H v_i - lambda_i v_i||_2; diagnostic, O(n^3).
double max_residual(const magnetics::DiscreteHamiltonian& H, const Spectrum& s);

double trace_function(const Eigen::VectorXd& eigenvalues, const testfun::TestFunction& f);
double trace_function(const Spectrum& s, const testfun::TestFunction& f);

// Scalable backend: banded complex Cholesky of H - E, m successive solves
// per canonical basis vector. Requires E strictly below the spectrum.
double trace_resolvent_power_solve(const magnetics::DiscreteHamiltonian& H, double E, int m);
// Same functional through the eigendecomposition.
double trace_resolvent_power_eigen(const Spectrum& s, double E, int m);

// sum_{x in F} [f(H)]_xx from the spectrum.
double local_trace(const Spectrum& s, const geometry::SiteGrid& grid,
                   const testfun::TestFunction& f, const geometry::Region& F);
// sum_x w_x [phi(H)]_xx for a sparse site weighting (e.g. a single-site
// profile translated to a lattice point).
double weighted_local_trace(const Spectrum& s, const std::vector<std::pair<int, double>>& weights,
                            const std::function<double(double)>& phi);

enum class BlockNorm { op, trace };

// || chi_F (H - E)^{-m} chi_G || from the spectrum; operator or trace norm.
double offdiag_block_norm(const Spectrum& s, const geometry::SiteGrid& grid, double E, int m,
                          const geometry::Region& F, const geometry::Region& G, BlockNorm which);

struct HFCheck {
    double analytic = 0.0;  // Tr(W f'(H + lambda W))
    double numeric = 0.0;   // central difference of Tr f(H + t W) at t = lambda
};

// W acts as a diagonal multiplication operator given by per-site weights.
HFCheck hellmann_feynman_check(const magnetics::DiscreteHamiltonian& H,
                               const std::vector<double>& W, const testfun::TestFunction& f,
                               double lambda, double step);

}  // namespace rso::spectral
