#include "rsolab/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "rsolab/common.hpp"
#include "rsolab/rng.hpp"

namespace rso::experiments {

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Workspace {
    std::shared_ptr<const geometry::SiteGrid> grid;
    geometry::IndexSet idx;
};

Workspace make_workspace(const Scenario& sc) {
    Workspace ws;
    ws.grid = std::make_shared<const geometry::SiteGrid>(geometry::SiteGrid::build(sc.box));
    auto region = geometry::Region::make_box(sc.box.d, sc.box.L, "box");
    ws.idx = geometry::index_set_meeting(region, sc.site_fn.support_radius());
    return ws;
}

double trace_one(const Scenario& sc, const Workspace& ws, geometry::Bc bc, int j) {
    auto cfg = disorder::sample_configuration(sc.dist, ws.idx, sc.seed,
                                              static_cast<std::uint64_t>(j));
    auto V = disorder::alloy_potential(cfg, sc.site_fn, *ws.grid);
    auto H = magnetics::assemble(ws.grid, sc.field, V, bc);
    return spectral::trace_function(spectral::eigenvalues_only(H), sc.f);
}

void finalize(EnsembleResult& r, const Scenario& sc) {
    r.L = sc.box.L;
    r.volume = sc.box.volume();
    r.scenario_hash = sc.hash();
    auto mom = stats::moments(r.traces);
    r.mean = mom.mean;
    r.var = mom.var;
    r.z.resize(r.traces.size());
    double root_vol = std::sqrt(r.volume);
    for (std::size_t j = 0; j < r.traces.size(); ++j) r.z[j] = (r.traces[j] - r.mean) / root_vol;
    r.sample_seeds.resize(r.traces.size());
    for (std::size_t j = 0; j < r.traces.size(); ++j)
        r.sample_seeds[j] = derive_seed(sc.seed, static_cast<std::uint64_t>(j));
}

}  // namespace

void Scenario::validate() const {
    box.validate();
    if (field.d != box.d) fail(errc::invalid_argument, "scenario: field dimension mismatch");
    if (samples < 2) fail(errc::invalid_argument, "scenario: need at least 2 samples");
    if (threads < 0) fail(errc::invalid_argument, "scenario: negative thread count");
    if (f.has_pole) {
        double floor = -sup_v();
        if (!(f.E < floor))
            fail(errc::invalid_argument,
                 "scenario: pole E=" + fmt_double(f.E) +
                     " must lie strictly below the deterministic spectral floor " +
                     fmt_double(floor));
    }
}

double Scenario::sup_v() const { return disorder::sup_bound(dist, site_fn, box.d, box.q); }

std::uint64_t Scenario::hash() const {
    std::string s = "box:" + std::to_string(box.d) + "," + std::to_string(box.L) + "," +
                    std::to_string(box.q) + ";field:";
    for (int j = 0; j < box.d; ++j)
        for (int k = 0; k < box.d; ++k) s += fmt_double(field.B[j][k]) + ",";
    s += ";dist:" + std::to_string(static_cast<int>(dist.kind)) + "," + fmt_double(dist.a) + "," +
         fmt_double(dist.b) + "," + fmt_double(dist.prob) + "," + fmt_double(dist.c);
    s += ";u:" + std::to_string(static_cast<int>(site_fn.kind)) + "," + fmt_double(site_fn.radius) +
         "," + fmt_double(site_fn.amplitude);
    s += ";f:" + f.kind + "," + fmt_double(f.E) + "," + fmt_double(f.m1) + "," + fmt_double(f.m2);
    if (f.poly) {
        s += ",m=" + std::to_string(f.poly->m) + ",a=";
        for (double a : f.poly->coeffs) s += fmt_double(a) + ",";
    }
    s += ";seed:" + std::to_string(seed) + ";samples:" + std::to_string(samples);
    return fnv1a(s);
}

Scenario Scenario::with_L(int L) const {
    Scenario sc = *this;
    sc.box.L = L;
    return sc;
}

double sample_trace(const Scenario& sc, geometry::Bc bc, int sample_index) {
    sc.validate();
    if (sample_index < 0) fail(errc::invalid_argument, "sample_trace: negative index");
    Workspace ws = make_workspace(sc);
    return trace_one(sc, ws, bc, sample_index);
}

std::vector<double> compute_trace_range(const Scenario& sc, geometry::Bc bc, int lo, int hi) {
    sc.validate();
    if (lo < 0 || hi < lo) fail(errc::invalid_argument, "compute_trace_range: bad range");
    Workspace ws = make_workspace(sc);
    std::vector<double> out(hi - lo);
    parallel_for(hi - lo, sc.threads, [&](int k) { out[k] = trace_one(sc, ws, bc, lo + k); });
    return out;
}

EnsembleResult run_ensemble(const Scenario& sc, geometry::Bc bc) {
    auto t0 = std::chrono::steady_clock::now();
    EnsembleResult r;
    r.bc = bc;
    r.traces = compute_trace_range(sc, bc, 0, sc.samples);
    finalize(r, sc);
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

EnsembleResult result_from_traces(const Scenario& sc, geometry::Bc bc, std::vector<double> traces) {
    if (traces.empty()) fail(errc::invalid_argument, "result_from_traces: no traces");
    EnsembleResult r;
    r.bc = bc;
    r.traces = std::move(traces);
    finalize(r, sc);
    return r;
}

std::vector<VarianceEstimate> variance_scaling(const std::vector<EnsembleResult>& results,
                                               int n_boot, std::uint64_t seed) {
    if (results.empty()) fail(errc::invalid_argument, "variance_scaling: no results");
    std::vector<VarianceEstimate> out;
    for (const auto& r : results) {
        VarianceEstimate e;
        e.value = r.var / r.volume;
        e.se = stats::bootstrap_var_se(r.traces, n_boot,
                                       derive_seed(seed, static_cast<std::uint64_t>(r.L),
                                                   static_cast<std::uint64_t>(r.bc))) /
               r.volume;
        e.method = "direct-scaling";
        e.n = static_cast<int>(r.traces.size());
        out.push_back(e);
    }
    return out;
}

stats::NormalityResult normality(const EnsembleResult& r, int n_boot, std::uint64_t seed) {
    return stats::normality_test(r.traces, n_boot, seed);
}

BcDifference bc_difference(const Scenario& sc, int n_boot, std::uint64_t boot_seed) {
    sc.validate();
    Workspace ws = make_workspace(sc);
    std::vector<double> td(sc.samples), tn(sc.samples);
    parallel_for(sc.samples, sc.threads, [&](int j) {
        auto cfg = disorder::sample_configuration(sc.dist, ws.idx, sc.seed,
                                                  static_cast<std::uint64_t>(j));
        auto V = disorder::alloy_potential(cfg, sc.site_fn, *ws.grid);
        auto hd = magnetics::assemble(ws.grid, sc.field, V, geometry::Bc::dirichlet);
        auto hn = magnetics::assemble(ws.grid, sc.field, V, geometry::Bc::neumann);
        td[j] = spectral::trace_function(spectral::eigenvalues_only(hd), sc.f);
        tn[j] = spectral::trace_function(spectral::eigenvalues_only(hn), sc.f);
    });
    auto md = stats::moments(td);
    auto mn = stats::moments(tn);
    double vol = sc.box.volume();
    std::vector<double> w(sc.samples);
    for (int j = 0; j < sc.samples; ++j) {
        double diff = (tn[j] - mn.mean) - (td[j] - md.mean);
        w[j] = diff * diff / vol;
    }
    auto mw = stats::moments(w);
    BcDifference out;
    out.L = sc.box.L;
    out.mean_sq = mw.mean;
    out.se = std::sqrt(mw.var / static_cast<double>(sc.samples));
    out.var_dirichlet = {md.var / vol,
                         stats::bootstrap_var_se(td, n_boot, derive_seed(boot_seed, 0xDu)) / vol,
                         "direct-scaling", sc.samples};
    out.var_neumann = {mn.var / vol,
                       stats::bootstrap_var_se(tn, n_boot, derive_seed(boot_seed, 0x4eu)) / vol,
                       "direct-scaling", sc.samples};
    return out;
}

ResidualReport decomposition_residual(const Scenario& sc, const geometry::DecompositionPlan& plan) {
    sc.validate();
    if (plan.L != sc.box.L || plan.d != sc.box.d)
        fail(errc::invalid_argument, "decomposition_residual: plan does not match the box");
    Workspace ws = make_workspace(sc);

    // Paper functional: core, B- and S-annuli, outer collar. The gap region
    // (inexact tiling only) is not part of the residual sum.
    std::vector<geometry::Region> regions;
    regions.push_back(plan.core);
    std::vector<int> b_region_pos;
    for (std::size_t k = 0; k < plan.b_annuli.size(); ++k) {
        b_region_pos.push_back(static_cast<int>(regions.size()));
        regions.push_back(plan.b_annuli[k]);
        regions.push_back(plan.s_annuli[k]);
    }
    regions.push_back(plan.outer);

    struct Sub {
        std::shared_ptr<const geometry::SiteGrid> grid;
        std::vector<int> map;  // region site -> full-grid site
    };
    std::vector<Sub> subs;
    for (const auto& reg : regions) {
        Sub s;
        s.grid = std::make_shared<const geometry::SiteGrid>(ws.grid->restrict_to(reg));
        s.map.resize(s.grid->size());
        for (int i = 0; i < s.grid->size(); ++i) s.map[i] = ws.grid->find(s.grid->coords[i]);
        subs.push_back(std::move(s));
    }

    const int ns = sc.samples;
    std::vector<double> t_full(ns);
    std::vector<std::vector<double>> t_sub(regions.size(), std::vector<double>(ns, 0.0));
    parallel_for(ns, sc.threads, [&](int j) {
        auto cfg = disorder::sample_configuration(sc.dist, ws.idx, sc.seed,
                                                  static_cast<std::uint64_t>(j));
        auto V = disorder::alloy_potential(cfg, sc.site_fn, *ws.grid);
        auto H = magnetics::assemble(ws.grid, sc.field, V, sc.box.bc);
        t_full[j] = spectral::trace_function(spectral::eigenvalues_only(H), sc.f);
        for (std::size_t r = 0; r < subs.size(); ++r) {
            if (subs[r].grid->size() == 0) continue;
            std::vector<double> vr(subs[r].grid->size());
            for (int i = 0; i < subs[r].grid->size(); ++i) vr[i] = V[subs[r].map[i]];
            auto Hr = magnetics::assemble(subs[r].grid, sc.field, vr, geometry::Bc::dirichlet);
            t_sub[r][j] = spectral::trace_function(spectral::eigenvalues_only(Hr), sc.f);
        }
    });

    double mean_full = stats::moments(t_full).mean;
    std::vector<double> mean_sub(regions.size());
    for (std::size_t r = 0; r < regions.size(); ++r) mean_sub[r] = stats::moments(t_sub[r]).mean;

    double vol = sc.box.volume();
    std::vector<double> g2(ns);
    for (int j = 0; j < ns; ++j) {
        double g = t_full[j] - mean_full;
        for (std::size_t r = 0; r < regions.size(); ++r) g -= t_sub[r][j] - mean_sub[r];
        g2[j] = g * g / vol;
    }
    auto mg = stats::moments(g2);

    ResidualReport rep;
    rep.L = sc.box.L;
    rep.mean_sq = mg.mean;
    rep.se = std::sqrt(mg.var / static_cast<double>(ns));
    rep.exact_tiling = plan.exact_tiling();
    for (std::size_t a = 0; a < b_region_pos.size(); ++a) {
        for (std::size_t b = a + 1; b < b_region_pos.size(); ++b) {
            const auto& ta = t_sub[b_region_pos[a]];
            const auto& tb = t_sub[b_region_pos[b]];
            double ma = stats::moments(ta).mean, mb = stats::moments(tb).mean;
            std::vector<double> prod(ns);
            for (int j = 0; j < ns; ++j) prod[j] = (ta[j] - ma) * (tb[j] - mb);
            auto mp = stats::moments(prod);
            PairCovariance pc;
            pc.a = plan.b_annuli[a].label;
            pc.b = plan.b_annuli[b].label;
            pc.cov = mp.mean * static_cast<double>(ns) / static_cast<double>(ns - 1);
            pc.se = std::sqrt(mp.var / static_cast<double>(ns));
            rep.annulus_cov.push_back(pc);
        }
    }
    return rep;
}

namespace {

DecayReport gap_report(std::string variant, const std::vector<double>& ells,
                       const std::function<GapPoint(double)>& point_at) {
    DecayReport rep;
    rep.variant = std::move(variant);
    std::vector<double> xs, ys;
    for (double ell : ells) {
        GapPoint p = point_at(ell);
        rep.points.push_back(p);
        xs.push_back(p.ell);
        ys.push_back(std::log(std::max(p.gap, 1e-300)));
    }
    rep.fit = stats::linear_fit(xs, ys);
    return rep;
}

}  // namespace

DecayReport interior_trace_gap_box(const Scenario& sc, int sub_L,
                                   const std::vector<double>& ells) {
    sc.validate();
    if (ells.size() < 2) fail(errc::invalid_argument, "interior_trace_gap: need at least 2 margins");
    if (!(sub_L > 0 && sub_L < sc.box.L))
        fail(errc::invalid_argument, "interior_trace_gap: sub-box must fit inside the box");
    Workspace ws = make_workspace(sc);
    auto cfg = disorder::sample_configuration(sc.dist, ws.idx, sc.seed, 0);
    auto V = disorder::alloy_potential(cfg, sc.site_fn, *ws.grid);
    auto H = magnetics::assemble(ws.grid, sc.field, V, geometry::Bc::dirichlet);
    auto sp = spectral::eigendecompose(H);

    auto sub_region = geometry::Region::make_box(sc.box.d, sub_L, "sub");
    auto sub_grid = std::make_shared<const geometry::SiteGrid>(ws.grid->restrict_to(sub_region));
    if (sub_grid->size() == 0) fail(errc::geometry, "interior_trace_gap: empty sub-box");
    std::vector<double> vs(sub_grid->size());
    for (int i = 0; i < sub_grid->size(); ++i) vs[i] = V[ws.grid->find(sub_grid->coords[i])];
    auto Hs = magnetics::assemble(sub_grid, sc.field, vs, geometry::Bc::dirichlet);
    auto sps = spectral::eigendecompose(Hs);

    return gap_report("box-in-box", ells, [&](double ell) {
        auto F = sub_region.interior(ell);
        if (F.empty())
            fail(errc::invalid_argument, "interior_trace_gap: margin " + fmt_double(ell) +
                                             " empties the sub-box interior");
        GapPoint p;
        p.ell = ell;
        double big = spectral::local_trace(sp, *ws.grid, sc.f, F);
        double small = spectral::local_trace(sps, *sub_grid, sc.f, F);
        p.gap = std::abs(big - small);
        p.reference = std::abs(big);
        return p;
    });
}

DecayReport interior_trace_gap_bc(const Scenario& sc, const std::vector<double>& ells) {
    sc.validate();
    if (ells.size() < 2) fail(errc::invalid_argument, "interior_trace_gap: need at least 2 margins");
    Workspace ws = make_workspace(sc);
    auto cfg = disorder::sample_configuration(sc.dist, ws.idx, sc.seed, 0);
    auto V = disorder::alloy_potential(cfg, sc.site_fn, *ws.grid);
    auto hd = magnetics::assemble(ws.grid, sc.field, V, geometry::Bc::dirichlet);
    auto hn = magnetics::assemble(ws.grid, sc.field, V, geometry::Bc::neumann);
    auto spd = spectral::eigendecompose(hd);
    auto spn = spectral::eigendecompose(hn);
    auto box_region = geometry::Region::make_box(sc.box.d, sc.box.L, "box");

    return gap_report("neumann-vs-dirichlet", ells, [&](double ell) {
        auto F = box_region.interior(ell);
        if (F.empty())
            fail(errc::invalid_argument, "interior_trace_gap: margin empties the box interior");
        GapPoint p;
        p.ell = ell;
        double a = spectral::local_trace(spn, *ws.grid, sc.f, F);
        double b = spectral::local_trace(spd, *ws.grid, sc.f, F);
        p.gap = std::abs(a - b);
        p.reference = std::abs(b);
        return p;
    });
}

OffdiagDecayReport offdiag_decay_probe(const Scenario& sc, double E, int m, double block_side,
                                       const std::vector<double>& dists) {
    sc.validate();
    if (dists.size() < 2) fail(errc::invalid_argument, "offdiag_decay_probe: need at least 2 distances");
    if (!(block_side > 0.0)) fail(errc::invalid_argument, "offdiag_decay_probe: block side must be positive");
    Workspace ws = make_workspace(sc);
    auto cfg = disorder::sample_configuration(sc.dist, ws.idx, sc.seed, 0);
    auto V = disorder::alloy_potential(cfg, sc.site_fn, *ws.grid);
    auto H = magnetics::assemble(ws.grid, sc.field, V, geometry::Bc::dirichlet);
    auto sp = spectral::eigendecompose(H);
    auto F = geometry::Region::make_box(sc.box.d, block_side, "F");

    OffdiagDecayReport rep;
    std::vector<double> xs, ys;
    for (double dist : dists) {
        double g_in = block_side / 2.0 + dist;
        double g_out = g_in + block_side;
        if (g_out > sc.box.L / 2.0)
            fail(errc::invalid_argument, "offdiag_decay_probe: probe shell leaves the box at distance " +
                                             fmt_double(dist));
        auto G = geometry::Region::make_shell(sc.box.d, g_in, g_out, "G");
        double norm = spectral::offdiag_block_norm(sp, *ws.grid, E, m, F, G, spectral::BlockNorm::op);
        rep.points.push_back({dist, norm});
        xs.push_back(dist);
        ys.push_back(std::log(std::max(norm, 1e-300)));
    }
    rep.fit = stats::linear_fit(xs, ys);
    return rep;
}

VarianceEstimate variance_formula(const Scenario& sc, int proxy_L, int n_out, int n_in,
                                  int q_points, std::uint64_t seed) {
    sc.validate();
    if (n_out < 2) fail(errc::invalid_argument, "variance_formula: need n_out >= 2");
    if (n_in < 1) fail(errc::invalid_argument, "variance_formula: need n_in >= 1");
    if (q_points < 2) fail(errc::invalid_argument, "variance_formula: need q_points >= 2");

    Scenario proxy = sc.with_L(proxy_L);
    proxy.box.bc = geometry::Bc::dirichlet;
    proxy.validate();
    Workspace ws = make_workspace(proxy);

    std::array<int, 3> corner{0, 0, 0};
    for (int i = 0; i < proxy.box.d; ++i) corner[i] = 1;
    double boundary_dist = proxy.box.L / 2.0 - 1.0;
    if (!(boundary_dist >= proxy.box.L / 4.0))
        fail(errc::invalid_argument,
             "variance_formula: corner site (1,...,1) closer than L/4 to the proxy boundary");
    if (!ws.idx.contains(corner))
        fail(errc::invalid_argument, "variance_formula: corner site outside the index set");

    // Mesh sites weighted by u translated to the corner.
    std::vector<std::pair<int, double>> weights;
    const int q = proxy.box.q;
    const int span = static_cast<int>(std::ceil(proxy.site_fn.support_radius() * q));
    std::array<int, 3> off{0, 0, 0};
    auto lo = [&](int i) { return i < proxy.box.d ? -span : 0; };
    auto hi = [&](int i) { return i < proxy.box.d ? span : 0; };
    for (off[0] = lo(0); off[0] <= hi(0); ++off[0]) {
        for (off[1] = lo(1); off[1] <= hi(1); ++off[1]) {
            for (off[2] = lo(2); off[2] <= hi(2); ++off[2]) {
                std::array<int, 3> site{corner[0] * q + off[0], corner[1] * q + off[1],
                                        corner[2] * q + off[2]};
                int s = ws.grid->find(site);
                if (s < 0) continue;
                std::array<double, 3> z{static_cast<double>(off[0]) / q,
                                        static_cast<double>(off[1]) / q,
                                        static_cast<double>(off[2]) / q};
                double uv = proxy.site_fn.value(z, proxy.box.d);
                if (uv != 0.0) weights.emplace_back(s, uv);
            }
        }
    }

    auto mask1 = disorder::mask_ones(proxy.box.d);
    auto mask0 = disorder::mask_ones_zero(proxy.box.d);
    auto quad = stats::gauss_legendre(q_points);
    auto fprime = [&](double x) { return proxy.f.deriv(x); };

    std::vector<double> cross(n_out);
    parallel_for(n_out, sc.threads, [&](int i) {
        auto base = disorder::sample_configuration(
            proxy.dist, ws.idx, seed, derive_seed(seed, 0xa0u, static_cast<std::uint64_t>(i)));
        // inner_mean[tau][rho], tau 1 keeps the corner, tau 0 redraws it.
        double inner_mean[2][2];
        for (int tau = 0; tau < 2; ++tau) {
            const auto& mask = tau == 1 ? mask1 : mask0;
            for (int rho = 0; rho < 2; ++rho) {
                KahanSum sum;
                for (int j = 0; j < n_in; ++j) {
                    auto cfg = disorder::conditional_resample(
                        base, mask,
                        derive_seed(seed, 0xb1u, static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(tau), static_cast<std::uint64_t>(rho),
                                    static_cast<std::uint64_t>(j)));
                    double omega = cfg.at(corner);
                    auto cfg0 = disorder::scale_coordinate(cfg, corner, 0.0);
                    auto v0 = disorder::alloy_potential(cfg0, proxy.site_fn, *ws.grid);
                    KahanSum integral;
                    std::vector<double> vt(v0.size());
                    for (int qi = 0; qi < q_points; ++qi) {
                        double t = quad.nodes[qi];
                        vt = v0;
                        for (const auto& [s, w] : weights) vt[s] += t * omega * w;
                        auto H = magnetics::assemble(ws.grid, proxy.field, vt, geometry::Bc::dirichlet);
                        auto sp = spectral::eigendecompose(H);
                        integral.add(quad.weights[qi] *
                                     spectral::weighted_local_trace(sp, weights, fprime));
                    }
                    sum.add(omega * integral.value());
                }
                inner_mean[tau][rho] = sum.value() / static_cast<double>(n_in);
            }
        }
        cross[i] = (inner_mean[1][0] - inner_mean[0][0]) * (inner_mean[1][1] - inner_mean[0][1]);
    });

    auto mom = stats::moments(cross);
    VarianceEstimate est;
    est.value = mom.mean;
    est.se = std::sqrt(mom.var / static_cast<double>(n_out));
    est.method = "conditional-formula";
    est.n = n_out;
    return est;
}

std::vector<MomentRow> moment_scan(const std::vector<EnsembleResult>& results) {
    std::vector<MomentRow> rows;
    for (const auto& r : results) {
        double n = static_cast<double>(r.traces.size());
        KahanSum s2, s4;
        for (double t : r.traces) {
            double d = t - r.mean;
            s2.add(d * d);
            s4.add(d * d * d * d);
        }
        MomentRow row;
        row.L = r.L;
        row.m2_normalized = s2.value() / n / r.volume;
        row.m4_normalized = s4.value() / n / (r.volume * r.volume);
        rows.push_back(row);
    }
    return rows;
}

std::vector<IdsRow> ids_estimate(const std::vector<EnsembleResult>& results) {
    std::vector<IdsRow> rows;
    for (const auto& r : results) {
        IdsRow row;
        row.L = r.L;
        row.bc = r.bc;
        row.value = r.mean / r.volume;
        row.se = std::sqrt(r.var / static_cast<double>(r.traces.size())) / r.volume;
        rows.push_back(row);
    }
    return rows;
}

PositivityVerdict positivity_check(const VarianceEstimate& direct, const VarianceEstimate& formula) {
    PositivityVerdict v;
    v.direct = direct;
    v.formula = formula;
    v.direct_positive = direct.value > 3.0 * direct.se;
    v.formula_positive = formula.value > 3.0 * formula.se;
    return v;
}

}  // namespace rso::experiments
