#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsolab/geometry.hpp"

namespace rso::disorder {

// Single-site coupling distribution; compact support [lo, hi].
struct SiteDistribution {
    enum class Kind { uniform, two_point, point_mass };
    Kind kind = Kind::uniform;
    double a = 0.0, b = 1.0;  // uniform / two_point endpoints
    double prob = 0.5;        // two_point: probability of the value b
    double c = 0.0;           // point_mass

    static SiteDistribution uniform(double a, double b);
    static SiteDistribution two_point(double a, double b, double prob);
    static SiteDistribution point_mass(double c);

    double lo() const;
    double hi() const;
    bool degenerate() const { return kind == Kind::point_mass || lo() == hi(); }
    // One 64-bit word of entropy fully determines the draw.
    double draw(std::uint64_t word) const;
};

// Bounded, compactly supported single-site profile u. The indicator uses
// half-open cells [-r, r) per axis so translates tile the mesh exactly; the
// hat profile is the closed tent prod_i max(0, 1 - |z_i|/r).
struct SingleSite {
    enum class Kind { indicator, hat };
    Kind kind = Kind::indicator;
    double radius = 0.5;
    double amplitude = 1.0;

    static SingleSite indicator(double radius = 0.5, double amplitude = 1.0);
    static SingleSite hat(double radius, double amplitude = 1.0);

    double value(const std::array<double, 3>& z, int d) const;
    double support_radius() const { return radius; }
    double sup() const { return std::abs(amplitude); }
    bool is_zero() const { return amplitude == 0.0; }
    int sign() const { return amplitude > 0.0 ? 1 : (amplitude < 0.0 ? -1 : 0); }
};

// Coupling values on an index set. Values are derived from
// (seed, stream, coordinate) and can always be re-derived; pristine flags
// whether no in-memory surgery (scaling, resampling) has happened.
struct Configuration {
    geometry::IndexSet idx;
    std::vector<double> values;
    SiteDistribution dist;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    bool pristine = true;

    double at(const std::array<int, 3>& n) const;  // key error when absent
    void set(const std::array<int, 3>& n, double v);
};

Configuration sample_configuration(const SiteDistribution& dist, const geometry::IndexSet& idx,
                                   std::uint64_t seed, std::uint64_t stream);

// Named coordinate predicate defining a conditioning sigma-algebra.
struct ConditioningMask {
    std::string name;
    std::function<bool(const std::array<int, 3>&)> keep;
};

// Lower-set masks around the corner site (1,...,1): mask_ones contains the
// corner, mask_ones_zero is identical except the corner is excluded. Their
// set difference over any finite window is exactly {(1,...,1)}.
ConditioningMask mask_ones(int d);
ConditioningMask mask_ones_zero(int d);
ConditioningMask mask_none();  // keeps nothing, every coordinate redrawn

// Coordinates where keep() holds retain their values; the complement is
// redrawn from the same master seed under fresh_stream.
Configuration conditional_resample(const Configuration& cfg, const ConditioningMask& mask,
                                   std::uint64_t fresh_stream);

// Coordinate surgery omega_k -> t * omega_k.
Configuration scale_coordinate(const Configuration& cfg, const std::array<int, 3>& k, double t);

// V(x) = sum_n omega_n u(x - n) on the grid. Fails with a coverage error if
// some lattice site whose support touches the grid is missing from cfg.
std::vector<double> alloy_potential(const Configuration& cfg, const SingleSite& u,
                                    const geometry::SiteGrid& grid);

// Deterministic bound: max_x sum_n |u(x - n)| * max(|lo|, |hi|), maximized
// over one mesh period cell.
double sup_bound(const SiteDistribution& dist, const SingleSite& u, int d, int q);

}  // namespace rso::disorder
