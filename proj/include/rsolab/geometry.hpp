#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rso::geometry {

enum class Bc { dirichlet, neumann };

const char* bc_name(Bc bc);

// Open centered cube (-L/2, L/2)^d meshed at spacing h = 1/q.
struct BoxSpec {
    int d = 1;
    int L = 2;
    int q = 1;
    Bc bc = Bc::dirichlet;

    void validate() const;
    double volume() const;  // L^d
    double h() const { return 1.0 / q; }
};

// Sup-norm region: either a centered open box or an open annular shell
// r_in < ||x||_inf < r_out. In d=1 a shell is a pair of intervals.
struct Region {
    enum class Kind { box, shell };
    Kind kind = Kind::box;
    int d = 1;
    double side = 0.0;            // box
    double r_in = 0.0, r_out = 0.0;  // shell
    std::string label;

    static Region make_box(int d, double side, std::string label = {});
    static Region make_shell(int d, double r_in, double r_out, std::string label = {});

    bool empty() const;
    double volume() const;  // box: side^d, shell: (2 r_out)^d - (2 r_in)^d
    bool contains(const std::array<double, 3>& x) const;
    // True when ||x||_inf sits on a bounding radius (tolerance for mesh
    // coordinates that are not exactly representable).
    bool on_boundary(const std::array<double, 3>& x, double tol = 1e-9) const;
    // Shrink every bounding face inward by ell. May come back empty.
    Region interior(double ell) const;
};

// Mesh sites of a box, integer coordinates in units of h, lexicographic.
// A lattice shift m (integer vector) moves the whole box; coordinates are
// stored already shifted so neighbor logic is uniform.
struct SiteGrid {
    int d = 1;
    int q = 1;
    int L = 2;
    std::vector<std::array<int, 3>> coords;
    std::unordered_map<std::uint64_t, int> lookup;

    static SiteGrid build(const BoxSpec& spec);
    static SiteGrid build_shifted(const BoxSpec& spec, const std::array<int, 3>& m);
    // Sites of this grid strictly inside a region; order preserved.
    SiteGrid restrict_to(const Region& region) const;

    int size() const { return static_cast<int>(coords.size()); }
    std::array<double, 3> position(int i) const;
    int find(const std::array<int, 3>& k) const;  // -1 when absent
};

// Lattice points n whose single-site support cube n + [-r,r]^d interacts
// with a region. Sorted lexicographically.
struct IndexSet {
    int d = 1;
    std::vector<std::array<int, 3>> sites;
    std::string provenance;

    std::uint64_t hash() const;
    bool contains(const std::array<int, 3>& n) const;
    int find(const std::array<int, 3>& n) const;  // -1 when absent
    int size() const { return static_cast<int>(sites.size()); }
};

// Supports meeting the open region (closed cube intersects it).
IndexSet index_set_meeting(const Region& region, double support_radius);
// Supports entirely inside the open region.
IndexSet index_set_inside(const Region& region, double support_radius);

// Concentric annuli covering a box: core cube, alternating bulk (B) and
// separating (S) annuli, and an outer collar at the box edge. When the
// derived radii do not tile the box exactly, the leftover ring between the
// outermost S-annulus and the collar is kept as an explicit gap region so
// the regions partition the whole box.
struct DecompositionPlan {
    int d = 1;
    int L = 0;
    double eps = 0.75, delta = 0.25, gamma = 0.5, alpha = 0.5;
    double R = 1.0;
    double M_L = 0.0;       // annulus width scale, kept real
    int r_L = 0;            // ladder depth
    double ell_L = 0.0;     // interior margin M_L^gamma
    double ell_tilde_L = 0.0;  // full-box interior margin L^alpha

    Region core;
    std::vector<Region> b_annuli;
    std::vector<Region> s_annuli;
    std::optional<Region> gap;
    Region outer;

    // core, B_1, S_1, ..., B_{r-1}, S_{r-1}, [gap], outer
    std::vector<Region> all_regions() const;
    bool exact_tiling() const { return !gap.has_value(); }
};

DecompositionPlan annuli_plan(const BoxSpec& spec, double eps, double delta, double gamma,
                              double alpha, double R);

std::string plan_to_json(const DecompositionPlan& plan);

}  // namespace rso::geometry
