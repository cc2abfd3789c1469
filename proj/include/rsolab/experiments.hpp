#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rsolab/disorder.hpp"
#include "rsolab/geometry.hpp"
#include "rsolab/magnetics.hpp"
#include "rsolab/spectral.hpp"
#include "rsolab/stats.hpp"
#include "rsolab/testfun.hpp"

namespace rso::experiments {

// One fully specified random-operator ensemble: box, field, disorder law,
// single-site profile, test function, sample budget, master seed.
struct Scenario {
    geometry::BoxSpec box;
    magnetics::MagneticField field = magnetics::MagneticField::zero(1);
    disorder::SiteDistribution dist = disorder::SiteDistribution::uniform(0.0, 1.0);
    disorder::SingleSite site_fn = disorder::SingleSite::indicator();
    testfun::TestFunction f = testfun::TestFunction::resolvent_power(-2.0, 3);
    int samples = 2;
    std::uint64_t seed = 1;
    int threads = 1;

    void validate() const;
    double sup_v() const;
    // Stable across runs and platforms; keys shard files.
    std::uint64_t hash() const;
    Scenario with_L(int L) const;
};

struct EnsembleResult {
    int L = 0;
    geometry::Bc bc = geometry::Bc::dirichlet;
    double volume = 0.0;
    std::vector<double> traces;
    std::vector<std::uint64_t> sample_seeds;
    double mean = 0.0;
    double var = 0.0;               // unbiased
    std::vector<double> z;          // (T_j - mean) / sqrt(volume)
    double elapsed_seconds = 0.0;   // provenance only, never exported to data files
    std::uint64_t scenario_hash = 0;
};

// Per-sample pipeline: configuration (stream = sample index) -> alloy
// potential -> operator -> spectrum -> trace. Pure in (scenario, bc, index).
double sample_trace(const Scenario& sc, geometry::Bc bc, int sample_index);
// Half-open range [lo, hi); entries ordered by sample index regardless of
// execution interleaving.
std::vector<double> compute_trace_range(const Scenario& sc, geometry::Bc bc, int lo, int hi);
EnsembleResult run_ensemble(const Scenario& sc, geometry::Bc bc);
// Rebuild the derived statistics from stored traces (shard loading).
EnsembleResult result_from_traces(const Scenario& sc, geometry::Bc bc, std::vector<double> traces);

struct VarianceEstimate {
    double value = 0.0;
    double se = 0.0;
    std::string method;
    int n = 0;
};

// Var(T)/|box| per result with bootstrap standard errors.
std::vector<VarianceEstimate> variance_scaling(const std::vector<EnsembleResult>& results,
                                               int n_boot, std::uint64_t seed);

stats::NormalityResult normality(const EnsembleResult& r, int n_boot, std::uint64_t seed);

struct BcDifference {
    int L = 0;
    double mean_sq = 0.0;  // E[(Y_N - Y_D)^2] / volume, sample-centered
    double se = 0.0;
    VarianceEstimate var_dirichlet, var_neumann;
};

// Coupled comparison: the same disorder configuration drives both boundary
// conditions sample by sample.
BcDifference bc_difference(const Scenario& sc, int n_boot, std::uint64_t boot_seed);

struct PairCovariance {
    std::string a, b;
    double cov = 0.0;
    double se = 0.0;
};

struct ResidualReport {
    int L = 0;
    double mean_sq = 0.0;  // E[G^2] / volume
    double se = 0.0;
    bool exact_tiling = true;
    std::vector<PairCovariance> annulus_cov;  // distinct B-annulus pairs
};

// G = centered full-box trace minus the sum of centered sub-region traces
// (core, B- and S-annuli, outer collar; all Dirichlet restrictions).
ResidualReport decomposition_residual(const Scenario& sc, const geometry::DecompositionPlan& plan);

struct GapPoint {
    double ell = 0.0;
    double gap = 0.0;
    double reference = 0.0;  // |local trace| at this margin
};

struct DecayReport {
    std::string variant;
    std::vector<GapPoint> points;
    stats::LinFit fit;  // log gap against margin
};

// |Tr_F f(H_box) - Tr_F f(H_subbox)|, F the margin-ell interior of the
// sub-box, one fixed configuration.
DecayReport interior_trace_gap_box(const Scenario& sc, int sub_L, const std::vector<double>& ells);
// |Tr_F f(H_N) - Tr_F f(H_D)| on the same box, F the margin-ell interior.
DecayReport interior_trace_gap_bc(const Scenario& sc, const std::vector<double>& ells);

struct NormPoint {
    double dist = 0.0;
    double norm = 0.0;
};

struct OffdiagDecayReport {
    std::vector<NormPoint> points;
    stats::LinFit fit;  // log norm against distance
};

// ||chi_F (H - E)^{-m} chi_G|| for a centered block F and shells G at
// increasing sup-norm distance; one fixed configuration.
OffdiagDecayReport offdiag_decay_probe(const Scenario& sc, double E, int m, double block_side,
                                       const std::vector<double>& dists);

// Nested Monte Carlo evaluation of the conditional-difference variance
// functional on a Dirichlet proxy box: outer samples over the environment,
// inner samples over the two conditioning masks around the corner site
// (1,...,1), Gauss-Legendre in the coupling-scale integral, and a
// two-replicate cross product for an unbiased square.
VarianceEstimate variance_formula(const Scenario& sc, int proxy_L, int n_out, int n_in,
                                  int q_points, std::uint64_t seed);

struct MomentRow {
    int L = 0;
    double m2_normalized = 0.0;  // E[(T-mean)^2] / volume
    double m4_normalized = 0.0;  // E[(T-mean)^4] / volume^2
};

std::vector<MomentRow> moment_scan(const std::vector<EnsembleResult>& results);

struct IdsRow {
    int L = 0;
    geometry::Bc bc = geometry::Bc::dirichlet;
    double value = 0.0;  // mean trace / volume
    double se = 0.0;
};

std::vector<IdsRow> ids_estimate(const std::vector<EnsembleResult>& results);

struct PositivityVerdict {
    VarianceEstimate direct, formula;
    bool direct_positive = false;   // value > 3 se
    bool formula_positive = false;
};

PositivityVerdict positivity_check(const VarianceEstimate& direct, const VarianceEstimate& formula);

}  // namespace rso::experiments
