#include "rsolab/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "rsolab/common.hpp"
#include "rsolab/rng.hpp"

namespace rso::geometry {

const char* bc_name(Bc bc) { return bc == Bc::dirichlet ? "dirichlet" : "neumann"; }

void BoxSpec::validate() const {
    if (d < 1 || d > 3) fail(errc::geometry, "box: d must be 1, 2 or 3");
    if (L < 2) fail(errc::geometry, "box: L must be >= 2");
    if (q < 1) fail(errc::geometry, "box: q must be >= 1");
}

double BoxSpec::volume() const {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= L;
    return v;
}

Region Region::make_box(int d, double side, std::string label) {
    Region r;
    r.kind = Kind::box;
    r.d = d;
    r.side = side;
    r.label = std::move(label);
    return r;
}

Region Region::make_shell(int d, double r_in, double r_out, std::string label) {
    if (r_in < 0.0) fail(errc::geometry, "shell: negative inner radius");
    Region r;
    r.kind = Kind::shell;
    r.d = d;
    r.r_in = r_in;
    r.r_out = r_out;
    r.label = std::move(label);
    return r;
}

bool Region::empty() const {
    return kind == Kind::box ? !(side > 0.0) : !(r_in < r_out);
}

double Region::volume() const {
    if (empty()) return 0.0;
    auto powd = [this](double v) {
        double p = 1.0;
        for (int i = 0; i < d; ++i) p *= v;
        return p;
    };
    return kind == Kind::box ? powd(side) : powd(2.0 * r_out) - powd(2.0 * r_in);
}

namespace {
double sup_norm(const std::array<double, 3>& x, int d) {
    double m = 0.0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}
}  // namespace

bool Region::contains(const std::array<double, 3>& x) const {
    if (empty()) return false;
    double nx = sup_norm(x, d);
    return kind == Kind::box ? nx < side / 2.0 : (r_in < nx && nx < r_out);
}

bool Region::on_boundary(const std::array<double, 3>& x, double tol) const {
    double nx = sup_norm(x, d);
    if (kind == Kind::box) return std::abs(nx - side / 2.0) <= tol;
    return std::abs(nx - r_in) <= tol || std::abs(nx - r_out) <= tol;
}

Region Region::interior(double ell) const {
    if (ell < 0.0) fail(errc::invalid_argument, "interior: negative margin");
    Region r = *this;
    if (kind == Kind::box) {
        r.side = side - 2.0 * ell;
    } else {
        r.r_in = r_in + ell;
        r.r_out = r_out - ell;
        if (r.r_in < 0.0) r.r_in = 0.0;
    }
    if (!label.empty()) r.label = label + "~" + std::to_string(ell);
    return r;
}

SiteGrid SiteGrid::build(const BoxSpec& spec) { return build_shifted(spec, {0, 0, 0}); }

SiteGrid SiteGrid::build_shifted(const BoxSpec& spec, const std::array<int, 3>& m) {
    spec.validate();
    SiteGrid g;
    g.d = spec.d;
    g.q = spec.q;
    g.L = spec.L;
    const int K = (spec.q * spec.L - 1) / 2;  // largest k with |k|/q < L/2
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < spec.d; ++i) {
        lo[i] = -K + spec.q * m[i];
        hi[i] = K + spec.q * m[i];
    }
    std::array<int, 3> k{0, 0, 0};
    for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0])
        for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
            for (k[2] = lo[2]; k[2] <= hi[2]; ++k[2]) g.coords.push_back(k);
    g.lookup.reserve(g.coords.size() * 2);
    for (int i = 0; i < g.size(); ++i) g.lookup.emplace(pack_coord(g.coords[i]), i);
    return g;
}

SiteGrid SiteGrid::restrict_to(const Region& region) const {
    SiteGrid g;
    g.d = d;
    g.q = q;
    g.L = L;
    for (int i = 0; i < size(); ++i)
        if (region.contains(position(i))) g.coords.push_back(coords[i]);
    g.lookup.reserve(g.coords.size() * 2);
    for (int i = 0; i < g.size(); ++i) g.lookup.emplace(pack_coord(g.coords[i]), i);
    return g;
}

std::array<double, 3> SiteGrid::position(int i) const {
    const auto& k = coords[i];
    double h = 1.0 / q;
    return {k[0] * h, k[1] * h, k[2] * h};
}

int SiteGrid::find(const std::array<int, 3>& k) const {
    auto it = lookup.find(pack_coord(k));
    return it == lookup.end() ? -1 : it->second;
}

std::uint64_t IndexSet::hash() const {
    std::uint64_t h = fnv1a(&d, sizeof(d));
    for (const auto& n : sites) {
        std::uint64_t p = pack_coord(n);
        h = fnv1a(&p, sizeof(p), h);
    }
    return h;
}

bool IndexSet::contains(const std::array<int, 3>& n) const { return find(n) >= 0; }

int IndexSet::find(const std::array<int, 3>& n) const {
    auto it = std::lower_bound(sites.begin(), sites.end(), n);
    if (it == sites.end() || *it != n) return -1;
    return static_cast<int>(it - sites.begin());
}

namespace {

// Range of ||x||_inf over the closed cube n + [-r, r]^d.
void support_norm_range(const std::array<int, 3>& n, int d, double r, double& lo, double& hi) {
    lo = 0.0;
    hi = 0.0;
    for (int i = 0; i < d; ++i) {
        double a = std::abs(static_cast<double>(n[i]));
        lo = std::max(lo, std::max(a - r, 0.0));
        hi = std::max(hi, a + r);
    }
}

template <typename Pred>
IndexSet enumerate_indices(const Region& region, double support_radius, std::string tag,
                           Pred keep) {
    if (support_radius < 0.0) fail(errc::invalid_argument, "index_set: negative support radius");
    IndexSet out;
    out.d = region.d;
    out.provenance = std::move(tag);
    if (region.empty()) {
        out.provenance += " (empty region)";
        return out;
    }
    double reach = (region.kind == Region::Kind::box ? region.side / 2.0 : region.r_out) +
                   support_radius;
    int bound = static_cast<int>(std::floor(reach)) + 1;
    std::array<int, 3> n{0, 0, 0};
    std::array<int, 3> hi{0, 0, 0};
    for (int i = 0; i < region.d; ++i) {
        n[i] = -bound;
        hi[i] = bound;
    }
    std::array<int, 3> cur = n;
    for (cur[0] = n[0]; cur[0] <= hi[0]; ++cur[0])
        for (cur[1] = n[1]; cur[1] <= hi[1]; ++cur[1])
            for (cur[2] = n[2]; cur[2] <= hi[2]; ++cur[2])
                if (keep(cur)) out.sites.push_back(cur);
    return out;
}

}  // namespace

IndexSet index_set_meeting(const Region& region, double support_radius) {
    double r = support_radius;
    return enumerate_indices(
        region, r, region.label + "|meet|r=" + std::to_string(r),
        [&](const std::array<int, 3>& n) {
            if (region.kind == Region::Kind::box) {
                for (int i = 0; i < region.d; ++i)
                    if (!(std::abs(static_cast<double>(n[i])) < region.side / 2.0 + r))
                        return false;
                return true;
            }
            double lo, hi;
            support_norm_range(n, region.d, r, lo, hi);
            return lo < region.r_out && hi > region.r_in;
        });
}

IndexSet index_set_inside(const Region& region, double support_radius) {
    double r = support_radius;
    return enumerate_indices(
        region, r, region.label + "|inside|r=" + std::to_string(r),
        [&](const std::array<int, 3>& n) {
            double lo, hi;
            support_norm_range(n, region.d, r, lo, hi);
            if (region.kind == Region::Kind::box) return hi < region.side / 2.0;
            return lo > region.r_in && hi < region.r_out;
        });
}

namespace {

// pow with a snap to the nearest integer; floor(625^0.75) must be 125, not
// 124 because of a one-ulp error in pow.
double snapped_pow(double base, double e) {
    double v = std::pow(base, e);
    double r = std::round(v);
    return std::abs(v - r) < 1e-9 ? r : v;
}

}  // namespace

std::vector<Region> DecompositionPlan::all_regions() const {
    std::vector<Region> rs;
    rs.push_back(core);
    for (std::size_t k = 0; k < b_annuli.size(); ++k) {
        rs.push_back(b_annuli[k]);
        rs.push_back(s_annuli[k]);
    }
    if (gap) rs.push_back(*gap);
    rs.push_back(outer);
    return rs;
}

DecompositionPlan annuli_plan(const BoxSpec& spec, double eps, double delta, double gamma,
                              double alpha, double R) {
    spec.validate();
    if (!(eps > delta && delta > 0.0)) fail(errc::geometry, "plan: need eps > delta > 0");
    if (std::abs(eps + delta - 1.0) > 1e-12) fail(errc::geometry, "plan: need eps + delta = 1");
    if (!(gamma > 0.0 && gamma < 1.0)) fail(errc::geometry, "plan: gamma outside (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) fail(errc::geometry, "plan: alpha outside (0,1)");
    if (!(R > 0.0)) fail(errc::geometry, "plan: R must be positive");

    DecompositionPlan p;
    p.d = spec.d;
    p.L = spec.L;
    p.eps = eps;
    p.delta = delta;
    p.gamma = gamma;
    p.alpha = alpha;
    p.R = R;
    double Ld = static_cast<double>(spec.L);
    p.M_L = 0.5 * std::floor(snapped_pow(Ld, eps));
    p.r_L = static_cast<int>(std::floor(snapped_pow(Ld, delta)));
    if (p.r_L < 2) fail(errc::geometry, "plan: ladder depth r_L < 2 at L=" + std::to_string(spec.L));
    p.ell_L = snapped_pow(p.M_L, gamma);
    p.ell_tilde_L = snapped_pow(Ld, alpha);

    const double M = p.M_L, half = Ld / 2.0;
    p.core = Region::make_box(spec.d, 6.0 * R, "core");
    double prev_out = 3.0 * R;
    for (int k = 1; k <= p.r_L - 1; ++k) {
        double b_in = (k - 1) * M + 3.0 * k * R;
        double b_out = k * M + 3.0 * (k - 1) * R;
        double s_in = b_out;
        double s_out = k * M + 3.0 * (k + 1) * R;
        if (!(b_in < b_out))
            fail(errc::geometry, "plan: B-annulus radii overlap at k=" + std::to_string(k));
        if (!(s_in < s_out))
            fail(errc::geometry, "plan: S-annulus radii overlap at k=" + std::to_string(k));
        if (b_in + 1e-12 < prev_out)
            fail(errc::geometry, "plan: radii not increasing at k=" + std::to_string(k));
        p.b_annuli.push_back(Region::make_shell(spec.d, b_in, b_out, "B" + std::to_string(k)));
        p.s_annuli.push_back(Region::make_shell(spec.d, s_in, s_out, "S" + std::to_string(k)));
        prev_out = s_out;
    }
    double collar_in = half - (M - 3.0 * p.r_L * R);
    if (!(collar_in < half))
        fail(errc::geometry, "plan: outer collar empty (M_L <= 3 r_L R) at k=" + std::to_string(p.r_L));
    if (collar_in + 1e-12 < prev_out)
        fail(errc::geometry, "plan: outer collar overlaps S-annulus at k=" + std::to_string(p.r_L - 1));
    if (collar_in > prev_out + 1e-12)
        p.gap = Region::make_shell(spec.d, prev_out, collar_in, "gap");
    p.outer = Region::make_shell(spec.d, collar_in, half, "outer");
    return p;
}

std::string plan_to_json(const DecompositionPlan& plan) {
    nlohmann::json j;
    j["d"] = plan.d;
    j["L"] = plan.L;
    j["eps"] = plan.eps;
    j["delta"] = plan.delta;
    j["gamma"] = plan.gamma;
    j["alpha"] = plan.alpha;
    j["R"] = plan.R;
    j["M_L"] = plan.M_L;
    j["r_L"] = plan.r_L;
    j["ell_L"] = plan.ell_L;
    j["ell_tilde_L"] = plan.ell_tilde_L;
    j["exact_tiling"] = plan.exact_tiling();
    nlohmann::json regions = nlohmann::json::array();
    for (const auto& r : plan.all_regions()) {
        nlohmann::json jr;
        jr["label"] = r.label;
        jr["kind"] = r.kind == Region::Kind::box ? "box" : "shell";
        if (r.kind == Region::Kind::box) {
            jr["side"] = r.side;
        } else {
            jr["r_in"] = r.r_in;
            jr["r_out"] = r.r_out;
        }
        jr["volume"] = r.volume();
        regions.push_back(jr);
    }
    j["regions"] = regions;
    return j.dump(2);
}

}  // namespace rso::geometry
