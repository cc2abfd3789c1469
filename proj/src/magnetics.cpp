#include "rsolab/magnetics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rsolab/common.hpp"

namespace rso::magnetics {

MagneticField MagneticField::zero(int d) {
    if (d < 1 || d > 3) fail(errc::invalid_argument, "field: d must be 1, 2 or 3");
    MagneticField f;
    f.d = d;
    return f;
}

MagneticField MagneticField::from_rows(int d, const std::vector<std::vector<double>>& rows) {
    MagneticField f = zero(d);
    if (static_cast<int>(rows.size()) != d)
        fail(errc::invalid_argument, "field: expected " + std::to_string(d) + " rows");
    for (int j = 0; j < d; ++j) {
        if (static_cast<int>(rows[j].size()) != d)
            fail(errc::invalid_argument, "field: row " + std::to_string(j) + " has wrong length");
        for (int k = 0; k < d; ++k) {
            if (!std::isfinite(rows[j][k])) fail(errc::invalid_argument, "field: non-finite entry");
            f.B[j][k] = rows[j][k];
        }
    }
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (f.B[j][k] != -f.B[k][j])
                fail(errc::invalid_argument, "field: B must satisfy B[j][k] == -B[k][j] exactly");
    return f;
}

bool MagneticField::is_zero() const {
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (B[j][k] != 0.0) return false;
    return true;
}

std::array<double, 3> vector_potential(const MagneticField& field, const std::array<double, 3>& x) {
    std::array<double, 3> a{0, 0, 0};
    for (int k = 0; k < field.d; ++k) {
        double s = 0.0;
        for (int j = 0; j < field.d; ++j) s += field.B[k][j] * x[j];
        a[k] = 0.5 * s;
    }
    return a;
}

double peierls_phase(const MagneticField& field, const std::array<double, 3>& x,
                     const std::array<double, 3>& y, double h) {
    int moved = 0;
    for (int i = 0; i < field.d; ++i) {
        double di = std::abs(y[i] - x[i]);
        if (di > 1e-12) {
            ++moved;
            if (std::abs(di - h) > 1e-12)
                fail(errc::invalid_argument, "peierls_phase: sites are not h-neighbors");
        }
    }
    if (moved != 1) fail(errc::invalid_argument, "peierls_phase: sites are not nearest neighbors");
    std::array<double, 3> mid{(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0, (x[2] + y[2]) / 2.0};
    auto a = vector_potential(field, mid);
    double th = 0.0;
    for (int i = 0; i < field.d; ++i) th += a[i] * (y[i] - x[i]);
    return th;
}

double translation_phase(const MagneticField& field, const std::array<int, 3>& m,
                         const std::array<double, 3>& x) {
    double s = 0.0;
    for (int j = 0; j < field.d; ++j)
        for (int k = 0; k < field.d; ++k)
            s += (static_cast<double>(m[j]) - x[j]) * field.B[k][j] * static_cast<double>(m[k]);
    return 0.5 * s;
}

DiscreteHamiltonian assemble(std::shared_ptr<const geometry::SiteGrid> grid,
                             const MagneticField& field, const std::vector<double>& potential,
                             geometry::Bc bc) {
    if (!grid || grid->size() == 0) fail(errc::invalid_argument, "assemble: empty grid");
    if (field.d != grid->d) fail(errc::invalid_argument, "assemble: field dimension mismatch");
    if (static_cast<int>(potential.size()) != grid->size())
        fail(errc::invalid_argument, "assemble: potential length mismatch");

    DiscreteHamiltonian H;
    H.grid = grid;
    H.bc = bc;
    H.n = grid->size();
    H.diag.resize(H.n);
    const double q2 = static_cast<double>(grid->q) * grid->q;
    const double h = 1.0 / grid->q;
    std::vector<int> deg(H.n, 0);
    for (int i = 0; i < H.n; ++i) {
        auto k = grid->coords[i];
        for (int axis = 0; axis < grid->d; ++axis) {
            for (int dir : {-1, 1}) {
                auto kk = k;
                kk[axis] += dir;
                int j = grid->find(kk);
                if (j < 0) continue;
                ++deg[i];
                if (j > i) {
                    double th = peierls_phase(field, grid->position(i), grid->position(j), h);
                    H.hops.push_back({i, j, -q2 * std::complex<double>(std::cos(th), std::sin(th))});
                }
            }
        }
    }
    for (int i = 0; i < H.n; ++i) {
        double v = potential[i];
        if (!std::isfinite(v)) fail(errc::invalid_argument, "assemble: non-finite potential");
        H.diag[i] = (bc == geometry::Bc::dirichlet ? 2.0 * grid->d * q2 : deg[i] * q2) + v;
        H.potential_sup = std::max(H.potential_sup, std::abs(v));
    }
    std::uint64_t fp = fnv1a(&H.n, sizeof(H.n));
    fp = fnv1a(H.diag.data(), H.diag.size() * sizeof(double), fp);
    if (!H.hops.empty()) fp = fnv1a(H.hops.data(), H.hops.size() * sizeof(DiscreteHamiltonian::Hop), fp);
    H.fingerprint = fp;
    return H;
}

Eigen::MatrixXcd DiscreteHamiltonian::to_dense() const {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = diag[i];
    for (const auto& hop : hops) {
        M(hop.i, hop.j) = hop.v;
        M(hop.j, hop.i) = std::conj(hop.v);
    }
    return M;
}

bool DiscreteHamiltonian::is_real() const {
    for (const auto& hop : hops)
        if (hop.v.imag() != 0.0) return false;
    return true;
}

int DiscreteHamiltonian::bandwidth() const {
    int b = 0;
    for (const auto& hop : hops) b = std::max(b, hop.j - hop.i);
    return b;
}

std::vector<std::complex<double>> magnetic_translate(const geometry::SiteGrid& src,
                                                     const geometry::SiteGrid& dst,
                                                     const MagneticField& field,
                                                     const std::vector<std::complex<double>>& v,
                                                     const std::array<int, 3>& m) {
    if (static_cast<int>(v.size()) != src.size())
        fail(errc::invalid_argument, "magnetic_translate: state length mismatch");
    if (dst.size() != src.size())
        fail(errc::invalid_argument, "magnetic_translate: grid size mismatch");
    std::vector<std::complex<double>> w(dst.size());
    for (int i = 0; i < dst.size(); ++i) {
        auto k = dst.coords[i];
        std::array<int, 3> k_src = k;
        for (int a = 0; a < dst.d; ++a) k_src[a] -= dst.q * m[a];
        int j = src.find(k_src);
        if (j < 0) fail(errc::invalid_argument, "magnetic_translate: dst is not src shifted by m");
        double psi = translation_phase(field, m, dst.position(i));
        w[i] = std::complex<double>(std::cos(psi), std::sin(psi)) * v[j];
    }
    return w;
}

void dump_triplets(const DiscreteHamiltonian& H, std::ostream& os) {
    char buf[128];
    for (int i = 0; i < H.n; ++i) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", i, i, H.diag[i], 0.0);
        os << buf;
    }
    for (const auto& hop : H.hops) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", hop.i, hop.j, hop.v.real(),
                      hop.v.imag());
        os << buf;
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", hop.j, hop.i, hop.v.real(),
                      -hop.v.imag());
        os << buf;
    }
}

}  // namespace rso::magnetics
