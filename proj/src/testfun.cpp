#include "rsolab/testfun.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "rsolab/common.hpp"

namespace rso::testfun {

double LaurentPoly::operator()(double x) const {
    double dx = x - E;
    if (dx == 0.0) fail(errc::invalid_argument, "laurent: evaluation at the pole");
    double y = 1.0 / dx;
    double s = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * y + *it;
    double ym = 1.0;
    for (int i = 0; i < m; ++i) ym *= y;
    return ym * s;
}

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly d;
    d.E = E;
    d.m = m + 1;
    d.coeffs.resize(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        d.coeffs[k] = -(static_cast<double>(m) + static_cast<double>(k)) * coeffs[k];
    return d;
}

void LaurentPoly::validate(int d) const {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "laurent: d must be 1, 2 or 3");
    if (m <= d + 1)
        fail(errc::invalid_argument,
             "laurent: order m=" + std::to_string(m) + " violates m > d+1 for d=" + std::to_string(d));
    if (coeffs.empty()) fail(errc::invalid_argument, "laurent: no coefficients");
    for (double a : coeffs)
        if (!std::isfinite(a)) fail(errc::invalid_argument, "laurent: non-finite coefficient");
}

TestFunction TestFunction::resolvent_power(double E, int m) {
    if (m < 1) fail(errc::invalid_argument, "resolvent_power: m must be >= 1");
    LaurentPoly p;
    p.E = E;
    p.m = m;
    p.coeffs = {1.0};
    TestFunction t = laurent(p);
    t.kind = "resolvent_power";
    return t;
}

TestFunction TestFunction::laurent(const LaurentPoly& p) {
    TestFunction t;
    t.kind = "laurent";
    t.E = p.E;
    t.has_pole = true;
    t.poly = p;
    t.m1 = p.m;
    t.m2 = p.m + 1;
    LaurentPoly dp = p.derivative();
    t.f = [p](double x) { return p(x); };
    t.df = [dp](double x) { return dp(x); };
    return t;
}

TestFunction TestFunction::custom(std::string kind, std::function<double(double)> f,
                                  std::function<double(double)> df, double m1, double m2,
                                  double domain_floor, bool has_pole) {
    TestFunction t;
    t.kind = std::move(kind);
    t.f = std::move(f);
    t.df = std::move(df);
    t.m1 = m1;
    t.m2 = m2;
    t.E = domain_floor;
    t.has_pole = has_pole;
    return t;
}

double TestFunction::operator()(double x) const {
    if (!defined_at(x))
        fail(errc::invalid_argument, "test function: evaluation at x=" + std::to_string(x) +
                                         " outside domain (x > " + std::to_string(E) + ")");
    return f(x);
}

double TestFunction::deriv(double x) const {
    if (!defined_at(x))
        fail(errc::invalid_argument, "test function derivative: x outside domain");
    return df(x);
}

TestFunction tilde_transform(const TestFunction& fn, double E, int d) {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "tilde_transform: d must be 1, 2 or 3");
    const int s = 1 + d / 2;
    if (fn.poly) {
        // (x-E)^s applied to the symbolic derivative shifts the leading
        // order down by s; still a Laurent function of the same pole.
        LaurentPoly dp = fn.poly->derivative();
        if (dp.E != E)
            fail(errc::invalid_argument, "tilde_transform: pole mismatch between f and E");
        LaurentPoly out = dp;
        out.m = dp.m - s;
        if (out.m < 1) fail(errc::invalid_argument, "tilde_transform: order drops below 1");
        TestFunction t = TestFunction::laurent(out);
        t.kind = "tilde(" + fn.kind + ")";
        return t;
    }
    auto df = fn.df;
    TestFunction t = TestFunction::custom(
        "tilde(" + fn.kind + ")",
        [df, E, s](double x) { return std::pow(x - E, s) * df(x); },
        [](double) -> double {
            fail(errc::invalid_argument, "tilde_transform: derivative of a custom tilde not defined");
        },
        fn.m2 - s, 0.0, E, fn.has_pole);
    return t;
}

FitReport laurent_fit(const std::function<double(double)>& g, double E, int m, int p,
                      double domain_lo, double x_max) {
    if (m < 1) fail(errc::invalid_argument, "laurent_fit: m must be >= 1");
    if (p < 0) fail(errc::invalid_argument, "laurent_fit: p must be >= 0");
    if (!(domain_lo > E)) fail(errc::invalid_argument, "laurent_fit: domain floor must exceed E");
    if (x_max <= 0.0) x_max = domain_lo + 1000.0 * (domain_lo - E);
    if (!(x_max > domain_lo)) fail(errc::invalid_argument, "laurent_fit: x_max must exceed domain floor");

    const double y_hi = 1.0 / (domain_lo - E);
    const double y_lo = 1.0 / (x_max - E);
    const int n_nodes = std::max(64, 16 * (p + 1));
    const double pi = 3.14159265358979323846;

    // Columns yhat^{m+k}, yhat = y / y_hi in (0, 1]; keeps the normal
    // equations well scaled for p up to a few dozen.
    auto build = [&](int count, Eigen::MatrixXd& A, Eigen::VectorXd& rhs,
                     std::vector<double>& ys) {
        A.resize(count, p + 1);
        rhs.resize(count);
        ys.resize(count);
        for (int i = 0; i < count; ++i) {
            double t = std::cos(pi * (i + 0.5) / count);
            double y = 0.5 * (y_lo + y_hi) + 0.5 * (y_hi - y_lo) * t;
            ys[i] = y;
            double x = E + 1.0 / y;
            rhs(i) = g(x);
            double yh = y / y_hi;
            double col = std::pow(yh, m);
            for (int k = 0; k <= p; ++k) {
                A(i, k) = col;
                col *= yh;
            }
        }
    };

    Eigen::MatrixXd A;
    Eigen::VectorXd rhs;
    std::vector<double> ys;
    build(n_nodes, A, rhs, ys);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < p + 1)
        fail(errc::numeric, "laurent_fit: basis numerically rank deficient at p=" + std::to_string(p));
    Eigen::VectorXd ahat = qr.solve(rhs);

    FitReport rep;
    rep.poly.E = E;
    rep.poly.m = m;
    rep.poly.coeffs.resize(p + 1);
    for (int k = 0; k <= p; ++k) rep.poly.coeffs[k] = ahat(k) / std::pow(y_hi, m + k);

    const int n_val = 10 * n_nodes;
    double sup = 0.0;
    for (int i = 0; i < n_val; ++i) {
        double t = std::cos(pi * (i + 0.5) / n_val);
        double y = 0.5 * (y_lo + y_hi) + 0.5 * (y_hi - y_lo) * t;
        double x = E + 1.0 / y;
        sup = std::max(sup, std::abs(g(x) - rep.poly(x)));
    }
    rep.validation_error = sup;
    double tail = 0.0;
    for (double factor = 2.0; factor <= 100.0; factor *= 2.0) {
        double x = x_max * factor;
        tail = std::max(tail, std::abs(g(x) - rep.poly(x)));
    }
    rep.tail_error = tail;
    rep.sup_error = std::max(sup, tail);
    return rep;
}

LaurentPoly antiderivative_lift(const LaurentPoly& P, int d) {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "antiderivative_lift: d must be 1, 2 or 3");
    const int s = d / 2;
    LaurentPoly Q;
    Q.E = P.E;
    Q.m = P.m + s;
    Q.coeffs.resize(P.coeffs.size());
    for (std::size_t k = 0; k < P.coeffs.size(); ++k) {
        double denom = static_cast<double>(P.m) + static_cast<double>(k) + static_cast<double>(s);
        Q.coeffs[k] = -P.coeffs[k] / denom;
    }
    return Q;
}

DecayCheck decay_spot_check(const TestFunction& f, double x_from, double x_to) {
    if (!(x_from > 0.0 && x_to > x_from))
        fail(errc::invalid_argument, "decay_spot_check: need 0 < x_from < x_to");
    DecayCheck c;
    double x = x_from;
    while (x <= x_to * 1.0000001) {
        if (f.defined_at(x)) {
            c.max_f_ratio = std::max(c.max_f_ratio, std::abs(f(x)) * std::pow(x, f.m1));
            c.max_df_ratio = std::max(c.max_df_ratio, std::abs(f.deriv(x)) * std::pow(x, f.m2));
        }
        x *= 2.0;
    }
    return c;
}

}  // namespace rso::testfun
