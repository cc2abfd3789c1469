#pragma once

#include <cstdint>
#include <vector>

namespace rso::stats {

struct Moments {
    double mean = 0.0;
    double var = 0.0;  // unbiased (n-1)
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::size_t n = 0;
};

Moments moments(const std::vector<double>& x);

double norm_cdf(double x);
// Inverse standard normal CDF, Wichura AS241 (double precision). Domain (0,1).
double norm_quantile(double p);

// Two-sided KS distance of a sample against the standard normal CDF.
// Input need not be sorted.
double ks_normal(std::vector<double> x);

struct NormalityResult {
    double ks = 0.0;
    double p_value = 0.0;    // parametric bootstrap, estimated location/scale
    double ks_boot_se = 0.0; // spread of the null KS distribution
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    bool degenerate = false;  // sample variance is zero; p undefined
};

// Studentizes internally; n_boot draws of the same sample size from N(0,1),
// each studentized, give the null distribution of the KS distance.
NormalityResult normality_test(const std::vector<double>& x, int n_boot, std::uint64_t seed);

// Bootstrap standard error of the unbiased sample variance.
double bootstrap_var_se(const std::vector<double>& x, int n_boot, std::uint64_t seed);

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Nodes and weights on [0,1]; Q >= 2.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Quadrature gauss_legendre(int q_points);

}  // namespace rso::stats
