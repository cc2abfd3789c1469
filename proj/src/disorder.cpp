#include "rsolab/disorder.hpp"

#include <algorithm>
#include <cmath>

#include "rsolab/common.hpp"
#include "rsolab/rng.hpp"

namespace rso::disorder {

SiteDistribution SiteDistribution::uniform(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        fail(errc::invalid_argument, "uniform: need finite a < b");
    SiteDistribution d;
    d.kind = Kind::uniform;
    d.a = a;
    d.b = b;
    return d;
}

SiteDistribution SiteDistribution::two_point(double a, double b, double prob) {
    if (!(std::isfinite(a) && std::isfinite(b) && a <= b))
        fail(errc::invalid_argument, "two_point: need finite a <= b");
    if (!(prob >= 0.0 && prob <= 1.0)) fail(errc::invalid_argument, "two_point: prob outside [0,1]");
    SiteDistribution d;
    d.kind = Kind::two_point;
    d.a = a;
    d.b = b;
    d.prob = prob;
    return d;
}

SiteDistribution SiteDistribution::point_mass(double c) {
    if (!std::isfinite(c)) fail(errc::invalid_argument, "point_mass: non-finite value");
    SiteDistribution d;
    d.kind = Kind::point_mass;
    d.c = c;
    return d;
}

double SiteDistribution::lo() const {
    switch (kind) {
        case Kind::uniform:
        case Kind::two_point: return a;
        case Kind::point_mass: return c;
    }
    return 0.0;
}

double SiteDistribution::hi() const {
    switch (kind) {
        case Kind::uniform:
        case Kind::two_point: return b;
        case Kind::point_mass: return c;
    }
    return 0.0;
}

double SiteDistribution::draw(std::uint64_t word) const {
    switch (kind) {
        case Kind::uniform: return a + (b - a) * u01(word);
        case Kind::two_point: return u01(word) < prob ? b : a;
        case Kind::point_mass: return c;
    }
    return 0.0;
}

SingleSite SingleSite::indicator(double radius, double amplitude) {
    if (!(radius > 0.0)) fail(errc::invalid_argument, "single_site: radius must be positive");
    SingleSite u;
    u.kind = Kind::indicator;
    u.radius = radius;
    u.amplitude = amplitude;
    return u;
}

SingleSite SingleSite::hat(double radius, double amplitude) {
    SingleSite u = indicator(radius, amplitude);
    u.kind = Kind::hat;
    return u;
}

double SingleSite::value(const std::array<double, 3>& z, int d) const {
    if (kind == Kind::indicator) {
        for (int i = 0; i < d; ++i)
            if (!(z[i] >= -radius && z[i] < radius)) return 0.0;
        return amplitude;
    }
    double v = amplitude;
    for (int i = 0; i < d; ++i) {
        double t = 1.0 - std::abs(z[i]) / radius;
        if (t <= 0.0) return 0.0;
        v *= t;
    }
    return v;
}

namespace {
double coordinate_draw(const SiteDistribution& dist, std::uint64_t seed, std::uint64_t stream,
                       const std::array<int, 3>& n) {
    return dist.draw(derive_seed(seed, 0xd15cull, stream, pack_coord(n)));
}
}  // namespace

double Configuration::at(const std::array<int, 3>& n) const {
    int i = idx.find(n);
    if (i < 0)
        fail(errc::invalid_argument, "configuration: coordinate (" + std::to_string(n[0]) + "," +
                                         std::to_string(n[1]) + "," + std::to_string(n[2]) +
                                         ") not in index set");
    return values[i];
}

void Configuration::set(const std::array<int, 3>& n, double v) {
    int i = idx.find(n);
    if (i < 0) fail(errc::invalid_argument, "configuration: coordinate not in index set");
    values[i] = v;
    pristine = false;
}

Configuration sample_configuration(const SiteDistribution& dist, const geometry::IndexSet& idx,
                                   std::uint64_t seed, std::uint64_t stream) {
    Configuration cfg;
    cfg.idx = idx;
    cfg.dist = dist;
    cfg.seed = seed;
    cfg.stream = stream;
    cfg.values.resize(idx.sites.size());
    for (std::size_t i = 0; i < idx.sites.size(); ++i)
        cfg.values[i] = coordinate_draw(dist, seed, stream, idx.sites[i]);
    return cfg;
}

namespace {
// Recursive lower sets: A(1,b) = {n1 <= b},
// A(d,b) = A(d-1,0) union {n_i <= 1 for i < d, n_d <= b}.
bool in_lower_set(const std::array<int, 3>& n, int d, int last) {
    if (d == 1) return n[0] <= last;
    if (in_lower_set(n, d - 1, 0)) return true;
    for (int i = 0; i + 1 < d; ++i)
        if (n[i] > 1) return false;
    return n[d - 1] <= last;
}
}  // namespace

ConditioningMask mask_ones(int d) {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "mask: d must be 1, 2 or 3");
    return {"ones(d=" + std::to_string(d) + ")",
            [d](const std::array<int, 3>& n) { return in_lower_set(n, d, 1); }};
}

ConditioningMask mask_ones_zero(int d) {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "mask: d must be 1, 2 or 3");
    return {"ones_zero(d=" + std::to_string(d) + ")",
            [d](const std::array<int, 3>& n) { return in_lower_set(n, d, 0); }};
}

ConditioningMask mask_none() {
    return {"none", [](const std::array<int, 3>&) { return false; }};
}

Configuration conditional_resample(const Configuration& cfg, const ConditioningMask& mask,
                                   std::uint64_t fresh_stream) {
    Configuration out = cfg;
    for (std::size_t i = 0; i < out.idx.sites.size(); ++i) {
        if (!mask.keep(out.idx.sites[i]))
            out.values[i] = coordinate_draw(out.dist, out.seed, fresh_stream, out.idx.sites[i]);
    }
    out.pristine = false;
    return out;
}

Configuration scale_coordinate(const Configuration& cfg, const std::array<int, 3>& k, double t) {
    if (!std::isfinite(t)) fail(errc::invalid_argument, "scale_coordinate: non-finite factor");
    Configuration out = cfg;
    int i = out.idx.find(k);
    if (i < 0) fail(errc::invalid_argument, "scale_coordinate: coordinate not in index set");
    out.values[i] *= t;
    out.pristine = false;
    return out;
}

std::vector<double> alloy_potential(const Configuration& cfg, const SingleSite& u,
                                    const geometry::SiteGrid& grid) {
    std::vector<double> V(grid.size(), 0.0);
    if (grid.size() == 0) return V;
    const int d = grid.d;
    const int q = grid.q;
    const double r = u.support_radius();

    // Lattice range whose supports can touch the grid.
    std::array<int, 3> klo{0, 0, 0}, khi{0, 0, 0};
    for (int i = 0; i < d; ++i) {
        int cmin = grid.coords[0][i], cmax = grid.coords[0][i];
        for (const auto& k : grid.coords) {
            cmin = std::min(cmin, k[i]);
            cmax = std::max(cmax, k[i]);
        }
        klo[i] = static_cast<int>(std::floor(static_cast<double>(cmin) / q - r)) - 1;
        khi[i] = static_cast<int>(std::ceil(static_cast<double>(cmax) / q + r)) + 1;
    }

    const int span = static_cast<int>(std::ceil(r * q));
    std::array<int, 3> n{0, 0, 0};
    for (n[0] = klo[0]; n[0] <= khi[0]; ++n[0]) {
        for (n[1] = klo[1]; n[1] <= khi[1]; ++n[1]) {
            for (n[2] = klo[2]; n[2] <= khi[2]; ++n[2]) {
                // Mesh points inside the support cube of u_n.
                int ci = -1;
                std::array<int, 3> k{n[0] * q, n[1] * q, n[2] * q};
                std::array<int, 3> off{0, 0, 0};
                auto lo = [&](int i) { return i < d ? -span : 0; };
                auto hi = [&](int i) { return i < d ? span : 0; };
                for (off[0] = lo(0); off[0] <= hi(0); ++off[0]) {
                    for (off[1] = lo(1); off[1] <= hi(1); ++off[1]) {
                        for (off[2] = lo(2); off[2] <= hi(2); ++off[2]) {
                            std::array<int, 3> site{k[0] + off[0], k[1] + off[1], k[2] + off[2]};
                            int s = grid.find(site);
                            if (s < 0) continue;
                            std::array<double, 3> z{static_cast<double>(off[0]) / q,
                                                    static_cast<double>(off[1]) / q,
                                                    static_cast<double>(off[2]) / q};
                            double uv = u.value(z, d);
                            if (uv == 0.0) continue;
                            if (ci < 0) {
                                ci = cfg.idx.find(n);
                                if (ci < 0)
                                    fail(errc::invalid_argument,
                                         "alloy_potential: configuration does not cover lattice site (" +
                                             std::to_string(n[0]) + "," + std::to_string(n[1]) + "," +
                                             std::to_string(n[2]) + ")");
                            }
                            V[s] += cfg.values[ci] * uv;
                        }
                    }
                }
            }
        }
    }
    return V;
}

double sup_bound(const SiteDistribution& dist, const SingleSite& u, int d, int q) {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "sup_bound: d must be 1, 2 or 3");
    if (q < 1) fail(errc::invalid_argument, "sup_bound: q must be >= 1");
    const double c = std::max(std::abs(dist.lo()), std::abs(dist.hi()));
    const int reach = static_cast<int>(std::ceil(u.support_radius())) + 1;
    double best = 0.0;
    // One period cell of mesh offsets.
    std::array<int, 3> j{0, 0, 0};
    auto hi = [&](int i) { return i < d ? q - 1 : 0; };
    for (j[0] = 0; j[0] <= hi(0); ++j[0]) {
        for (j[1] = 0; j[1] <= hi(1); ++j[1]) {
            for (j[2] = 0; j[2] <= hi(2); ++j[2]) {
                std::array<double, 3> x{static_cast<double>(j[0]) / q,
                                        static_cast<double>(j[1]) / q,
                                        static_cast<double>(j[2]) / q};
                double s = 0.0;
                std::array<int, 3> n{0, 0, 0};
                auto nhi = [&](int i) { return i < d ? reach : 0; };
                for (n[0] = -reach; n[0] <= nhi(0); ++n[0]) {
                    for (n[1] = -reach; n[1] <= nhi(1); ++n[1]) {
                        for (n[2] = -reach; n[2] <= nhi(2); ++n[2]) {
                            std::array<double, 3> z{x[0] - n[0], x[1] - n[1], x[2] - n[2]};
                            s += std::abs(u.value(z, d));
                        }
                    }
                }
                best = std::max(best, s);
            }
        }
    }
    return c * best;
}

}  // namespace rso::disorder
