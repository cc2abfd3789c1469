#include "rsolab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rsolab/common.hpp"
#include "rsolab/rng.hpp"

namespace rso::stats {

Moments moments(const std::vector<double>& x) {
    Moments m;
    m.n = x.size();
    if (x.empty()) fail(errc::invalid_argument, "moments: empty sample");
    KahanSum s;
    for (double v : x) s.add(v);
    m.mean = s.value() / static_cast<double>(m.n);
    KahanSum s2, s3, s4;
    for (double v : x) {
        double d = v - m.mean;
        double d2 = d * d;
        s2.add(d2);
        s3.add(d2 * d);
        s4.add(d2 * d2);
    }
    double n = static_cast<double>(m.n);
    double m2 = s2.value() / n;
    m.var = m.n > 1 ? s2.value() / (n - 1.0) : 0.0;
    if (m2 > 0.0) {
        m.skewness = (s3.value() / n) / std::pow(m2, 1.5);
        m.excess_kurtosis = (s4.value() / n) / (m2 * m2) - 3.0;
    }
    return m;
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) fail(errc::invalid_argument, "norm_quantile: p outside (0,1)");
    const double q = p - 0.5;
    double r, num, den;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                    6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                  1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                    3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                  5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    double val = num / den;
    return q < 0.0 ? -val : val;
}

double ks_normal(std::vector<double> x) {
    if (x.empty()) fail(errc::invalid_argument, "ks_normal: empty sample");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double f = norm_cdf(x[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

namespace {

// Location/scale studentization; returns false when the spread vanishes.
bool studentize(std::vector<double>& x) {
    Moments m = moments(x);
    if (!(m.var > 0.0)) return false;
    double sd = std::sqrt(m.var);
    for (double& v : x) v = (v - m.mean) / sd;
    return true;
}

}  // namespace

NormalityResult normality_test(const std::vector<double>& x, int n_boot, std::uint64_t seed) {
    if (x.size() < 8) fail(errc::invalid_argument, "normality_test: sample too small");
    if (n_boot < 1) fail(errc::invalid_argument, "normality_test: n_boot must be positive");
    NormalityResult r;
    Moments m = moments(x);
    r.skewness = m.skewness;
    r.excess_kurtosis = m.excess_kurtosis;
    std::vector<double> z = x;
    if (!studentize(z)) {
        r.degenerate = true;
        r.p_value = std::nan("");
        return r;
    }
    r.ks = ks_normal(z);
    // Parametric bootstrap: the null distribution of the KS distance after
    // location/scale estimation is not the classical Kolmogorov law.
    std::size_t n = x.size();
    int exceed = 0;
    KahanSum bsum, bsq;
    std::vector<double> sim(n);
    for (int b = 0; b < n_boot; ++b) {
        StreamRng rng(derive_seed(seed, 0x4b53u, static_cast<std::uint64_t>(b)));
        for (std::size_t i = 0; i < n; ++i) sim[i] = norm_quantile(rng.next_u01_open());
        if (!studentize(sim)) continue;
        double d = ks_normal(sim);
        if (d >= r.ks) ++exceed;
        bsum.add(d);
        bsq.add(d * d);
    }
    r.p_value = (1.0 + exceed) / (static_cast<double>(n_boot) + 1.0);
    double bn = static_cast<double>(n_boot);
    double bm = bsum.value() / bn;
    double bv = bsq.value() / bn - bm * bm;
    r.ks_boot_se = bv > 0.0 ? std::sqrt(bv) : 0.0;
    return r;
}

double bootstrap_var_se(const std::vector<double>& x, int n_boot, std::uint64_t seed) {
    if (x.size() < 2) fail(errc::invalid_argument, "bootstrap_var_se: need at least 2 samples");
    if (n_boot < 2) fail(errc::invalid_argument, "bootstrap_var_se: n_boot must be >= 2");
    std::size_t n = x.size();
    std::vector<double> resampled(n);
    KahanSum bsum, bsq;
    for (int b = 0; b < n_boot; ++b) {
        StreamRng rng(derive_seed(seed, 0xb007u, static_cast<std::uint64_t>(b)));
        for (std::size_t i = 0; i < n; ++i) resampled[i] = x[rng.next_index(n)];
        double v = moments(resampled).var;
        bsum.add(v);
        bsq.add(v * v);
    }
    double bn = static_cast<double>(n_boot);
    double bm = bsum.value() / bn;
    double bv = (bsq.value() - bn * bm * bm) / (bn - 1.0);
    return bv > 0.0 ? std::sqrt(bv) : 0.0;
}

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        fail(errc::invalid_argument, "linear_fit: need matching samples, n >= 2");
    double n = static_cast<double>(x.size());
    KahanSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    double mx = sx.value() / n, my = sy.value() / n;
    KahanSum sxx, sxy, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx.add((x[i] - mx) * (x[i] - mx));
        sxy.add((x[i] - mx) * (y[i] - my));
        syy.add((y[i] - my) * (y[i] - my));
    }
    if (!(sxx.value() > 0.0)) fail(errc::numeric, "linear_fit: degenerate abscissae");
    LinFit f;
    f.slope = sxy.value() / sxx.value();
    f.intercept = my - f.slope * mx;
    f.r2 = syy.value() > 0.0 ? (sxy.value() * sxy.value()) / (sxx.value() * syy.value()) : 1.0;
    return f;
}

Quadrature gauss_legendre(int q_points) {
    if (q_points < 2) fail(errc::invalid_argument, "gauss_legendre: need at least 2 nodes");
    const int q = q_points;
    Quadrature out;
    out.nodes.resize(q);
    out.weights.resize(q);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence up to degree q at x.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1,1] to [0,1]; nodes stored ascending.
        out.nodes[i] = (1.0 - x) / 2.0;
        out.nodes[q - 1 - i] = (1.0 + x) / 2.0;
        out.weights[i] = w / 2.0;
        out.weights[q - 1 - i] = w / 2.0;
    }
    return out;
}

}  // namespace rso::stats
