#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rso::testfun {

// P(x) = (x-E)^{-m} * sum_{k=0}^{p} a_k (x-E)^{-k}, evaluated by Horner in
// y = 1/(x-E). Defined for x != E; spectral use requires x > E throughout.
struct LaurentPoly {
    double E = 0.0;
    int m = 3;
    std::vector<double> coeffs{1.0};  // a_0 .. a_p

    double operator()(double x) const;
    LaurentPoly derivative() const;
    // Admissibility for ambient dimension d: integer order m > d + 1.
    void validate(int d) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Evaluable test function with an analytic derivative and polynomial decay
// envelopes |f| <= C x^{-m1}, |f'| <= C x^{-m2} at infinity.
struct TestFunction {
    std::string kind = "custom";
    std::function<double(double)> f;
    std::function<double(double)> df;
    double m1 = 0.0, m2 = 0.0;
    double E = 0.0;        // pole location when has_pole
    bool has_pole = false; // domain restricted to x > E
    std::optional<LaurentPoly> poly;

    static TestFunction resolvent_power(double E, int m);
    static TestFunction laurent(const LaurentPoly& p);
    static TestFunction custom(std::string kind, std::function<double(double)> f,
                               std::function<double(double)> df, double m1, double m2,
                               double domain_floor, bool has_pole);

    double operator()(double x) const;
    double deriv(double x) const;
    // Largest x where evaluation is invalid, or -inf.
    bool defined_at(double x) const { return !has_pole || x > E; }
};

// g(x) = (x-E)^{1+floor(d/2)} f'(x). Symbolic when f is Laurent-backed.
TestFunction tilde_transform(const TestFunction& f, double E, int d);

struct FitReport {
    LaurentPoly poly;
    double sup_error = 0.0;         // validation grid plus tail probe
    double validation_error = 0.0;  // validation grid only
    double tail_error = 0.0;        // probe beyond x_max
};

// Least squares in the substituted variable y = 1/(x-E) on Chebyshev nodes
// over [domain_lo, x_max]; x_max <= 0 selects the default
// domain_lo + 1000 * (domain_lo - E). Sup error reported on a 10x denser
// validation grid plus log-spaced tail probes out to 100 * x_max.
FitReport laurent_fit(const std::function<double(double)>& g, double E, int m, int p,
                      double domain_lo, double x_max = 0.0);

// Q with Q'(x) = (x-E)^{-(1+floor(d/2))} P(x) and Q -> 0 at infinity:
// a_k (x-E)^{-m-k} contributes -a_k/(m+k+floor(d/2)) (x-E)^{-m-k-floor(d/2)}.
LaurentPoly antiderivative_lift(const LaurentPoly& P, int d);

struct DecayCheck {
    double max_f_ratio = 0.0;   // sup |f(x)| x^{m1} over the probe grid
    double max_df_ratio = 0.0;  // sup |f'(x)| x^{m2}
};

// Geometric grid from x_from to x_to (default 1e6).
DecayCheck decay_spot_check(const TestFunction& f, double x_from, double x_to = 1e6);

}  // namespace rso::testfun
