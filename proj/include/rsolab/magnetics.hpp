#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "rsolab/geometry.hpp"

namespace rso::magnetics {

// Constant field tensor, d x d real skew-symmetric. Skewness is validated
// exactly; a field that is skew only up to rounding is rejected.
struct MagneticField {
    int d = 1;
    std::array<std::array<double, 3>, 3> B{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};

    static MagneticField zero(int d);
    static MagneticField from_rows(int d, const std::vector<std::vector<double>>& rows);
    double entry(int j, int k) const { return B[j][k]; }
    bool is_zero() const;
};

// Linear gauge A(x) = B x / 2.
std::array<double, 3> vector_potential(const MagneticField& field, const std::array<double, 3>& x);

// Midpoint-rule hopping phase theta(x,y) = A((x+y)/2) . (y-x) for nearest
// neighbors at distance h.
double peierls_phase(const MagneticField& field, const std::array<double, 3>& x,
                     const std::array<double, 3>& y, double h);

// Phase of the magnetic translation by the lattice vector m, evaluated at x.
double translation_phase(const MagneticField& field, const std::array<int, 3>& m,
                         const std::array<double, 3>& x);

// Finite-volume magnetic Schroedinger operator on a mesh. Hermitian by
// construction: only i < j hops are stored, the mirror entry is the
// conjugate. Diagonal: 2d/h^2 + V (Dirichlet) or deg/h^2 + V (Neumann).
struct DiscreteHamiltonian {
    std::shared_ptr<const geometry::SiteGrid> grid;
    geometry::Bc bc = geometry::Bc::dirichlet;
    int n = 0;
    std::vector<double> diag;
    struct Hop {
        int i, j;  // i < j
        std::complex<double> v;
    };
    std::vector<Hop> hops;
    double potential_sup = 0.0;  // max |V_x| over the grid
    std::uint64_t fingerprint = 0;

    Eigen::MatrixXcd to_dense() const;
    bool is_real() const;  // every hop has zero imaginary part
    int bandwidth() const;
};

DiscreteHamiltonian assemble(std::shared_ptr<const geometry::SiteGrid> grid,
                             const MagneticField& field, const std::vector<double>& potential,
                             geometry::Bc bc);

// (U_m v)(x) = exp(i Psi_m(x)) v(x - m) mapped from src onto dst = src + m.
std::vector<std::complex<double>> magnetic_translate(const geometry::SiteGrid& src,
                                                     const geometry::SiteGrid& dst,
                                                     const MagneticField& field,
                                                     const std::vector<std::complex<double>>& v,
                                                     const std::array<int, 3>& m);

// Sparse triplet text dump: one "row col re im" line per stored entry,
// diagonal first, then both triangles.
void dump_triplets(const DiscreteHamiltonian& H, std::ostream& os);

}  // namespace rso::magnetics
