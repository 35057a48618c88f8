#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "eub/linalg.hpp"

// Measurement bases, bipartite density matrices, the built-in example family
// (a 2x4 bound-entangled state measured on the 4-dimensional factor, plus two
// fixed 4-dimensional bases and a one-parameter 3x3 unitary family), and
// seeded random ensembles for the verification harness.

namespace eub {

struct MeasurementBasis {
    ComplexMatrix u; // columns are the basis vectors

    explicit MeasurementBasis(ComplexMatrix m) : u(std::move(m)) {
        require_square(u, "MeasurementBasis");
        double dev = max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.rows()));
        if (dev > tol::hermiticity)
            throw contract_error("MeasurementBasis: columns not orthonormal (max deviation " +
                                 std::to_string(dev) + ")");
    }

    int dim() const { return static_cast<int>(u.rows()); }
    ComplexMatrix vector(int j) const { return u.col(j); }
};

struct BipartiteState {
    int dim_a = 0;
    int dim_b = 0;
    ComplexMatrix rho;
    Factor measured = Factor::Second;

    BipartiteState(int da, int db, ComplexMatrix m, Factor meas)
        : dim_a(da), dim_b(db), rho(std::move(m)), measured(meas) {
        if (dim_a < 1 || dim_b < 1)
            throw contract_error("BipartiteState: factor dimensions must be >= 1");
        const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
        if (rho.rows() != n || rho.cols() != n)
            throw contract_error("BipartiteState: matrix is " + std::to_string(rho.rows()) + "x" +
                                 std::to_string(rho.cols()) + " but dims declare " +
                                 std::to_string(n));
        require_hermitian(rho, "BipartiteState");
        double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > tol::hermiticity)
            throw contract_error("BipartiteState: trace = " + std::to_string(tr) + ", expected 1");
        auto ev = hermitian_eigenvalues(rho);
        if (ev.back() < tol::eig_floor)
            throw contract_error("BipartiteState: negative eigenvalue " +
                                 std::to_string(ev.back()));
    }

    int measured_dim() const { return measured == Factor::First ? dim_a : dim_b; }
    int memory_dim() const { return measured == Factor::First ? dim_b : dim_a; }

    // Density matrix with the measured factor rotated into the first slot.
    // All entropy code works in this canonical orientation.
    ComplexMatrix canonical_rho() const {
        return measured == Factor::First ? rho : swap_factors(rho, dim_a, dim_b);
    }
};

inline MeasurementBasis standard_basis(int d) {
    if (d < 1) throw domain_error("standard_basis: dimension must be >= 1");
    return MeasurementBasis(ComplexMatrix::Identity(d, d));
}

// Discrete Fourier basis; mutually unbiased with the standard basis in any dim.
inline MeasurementBasis fourier_basis(int d) {
    if (d < 1) throw domain_error("fourier_basis: dimension must be >= 1");
    ComplexMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            double phase = 2.0 * std::numbers::pi * j * k / d;
            f(j, k) = norm * cxd(std::cos(phase), std::sin(phase));
        }
    return MeasurementBasis(f);
}

// One-parameter family of 2x4 states (entangled on the open interval of p).
// The first factor (dim 2) is the memory; measurements act on the second
// (dim 4) factor.
inline BipartiteState paper_state(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("paper_state: p must lie in [0,1], got " + std::to_string(p));
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    const double r = std::sqrt(1.0 - p * p) / 2.0;
    m(0, 0) = p; m(0, 5) = p;
    m(1, 1) = p; m(1, 6) = p;
    m(2, 2) = p; m(2, 7) = p;
    m(3, 3) = p;
    m(4, 4) = (1.0 + p) / 2.0; m(4, 7) = r;
    m(5, 0) = p; m(5, 5) = p;
    m(6, 1) = p; m(6, 6) = p;
    m(7, 2) = p; m(7, 4) = r; m(7, 7) = (1.0 + p) / 2.0;
    m *= 1.0 / (1.0 + 7.0 * p);
    return BipartiteState(2, 4, m, Factor::Second);
}

// The fixed 4-dimensional basis pair used with paper_state: four explicit
// rational-component vectors, and the standard basis.
inline std::pair<MeasurementBasis, MeasurementBasis> paper_bases() {
    const double a = std::sqrt(205.0);
    const double b = std::sqrt(298.0);
    ComplexMatrix u(4, 4); // columns are the four vectors
    u.col(0) << 12.0 / a, 6.0 / a, 4.0 / a, 3.0 / a;
    u.col(1) << -66.0 / (29.0 * a), 172.0 / (29.0 * a), 183.0 / (29.0 * a), -324.0 / (29.0 * a);
    u.col(2) << -11.0 / (29.0 * b), 309.0 / (29.0 * b), -390.0 / (29.0 * b), -54.0 / (29.0 * b);
    u.col(3) << 9.0 / b, -9.0 / b, -6.0 / b, -10.0 / b;
    return {MeasurementBasis(u), standard_basis(4)};
}

// Printed 3x3 overlap seed matrix; only 4-decimal accurate, so it is
// projected to its nearest unitary before use.
inline ComplexMatrix printed_o_matrix() {
    ComplexMatrix o(3, 3);
    o << 0.4575, 0.4575, 0.7625,
        -0.2453, 0.8892, -0.3863,
        -0.8547, -0.0103, 0.5190;
    return o;
}

inline ComplexMatrix m_theta(double theta) {
    ComplexMatrix m = ComplexMatrix::Identity(3, 3);
    m(1, 1) = std::cos(theta);
    m(1, 2) = std::sin(theta);
    m(2, 1) = -std::sin(theta);
    m(2, 2) = std::cos(theta);
    return m;
}

struct ThetaFamilySpec {
    double theta = 0.0;
    ComplexMatrix m;           // rotation M(theta)
    ComplexMatrix o_printed;   // 4-decimal seed matrix
    ComplexMatrix o_unitary;   // nearest unitary to o_printed
    double projection_distance = 0.0; // max entrywise |o_unitary - o_printed|
    ComplexMatrix u;           // M(theta) * o_unitary * M(theta)^dag
};

inline ThetaFamilySpec theta_family(double theta) {
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    if (!(theta >= 0.0 && theta <= quarter_pi + 1e-12))
        throw domain_error("theta_family: theta must lie in [0, pi/4], got " +
                           std::to_string(theta));
    ThetaFamilySpec spec;
    spec.theta = theta;
    spec.m = m_theta(theta);
    spec.o_printed = printed_o_matrix();
    spec.o_unitary = nearest_unitary(spec.o_printed);
    spec.projection_distance = max_abs(spec.o_unitary - spec.o_printed);
    spec.u = spec.m * spec.o_unitary * spec.m.adjoint();
    return spec;
}

// Basis pair (standard basis of dim 3, basis whose overlap-with-standard
// matrix is U(theta)).  Since the overlap of the standard basis with a basis B
// is just B's matrix, the second basis is U(theta) itself.
inline std::pair<MeasurementBasis, MeasurementBasis> u_theta(double theta) {
    ThetaFamilySpec spec = theta_family(theta);
    return {standard_basis(3), MeasurementBasis(spec.u)};
}

// Deterministic random source.  Uniforms come straight from mt19937_64 raw
// output ((x >> 11) * 2^-53) and gaussians from Box-Muller, so streams are
// identical across standard libraries (std::*_distribution would not be).
struct SeededRng {
    std::mt19937_64 eng;
    bool has_cached = false;
    double cached = 0.0;

    explicit SeededRng(std::uint64_t seed) : eng(seed) {}

    double uniform() { // [0, 1)
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (has_cached) {
            has_cached = false;
            return cached;
        }
        double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        cached = radius * std::sin(angle);
        has_cached = true;
        return radius * std::cos(angle);
    }

    cxd cgauss() {
        double re = gauss();
        double im = gauss();
        return {re, im};
    }
};

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
// convention that makes the triangular factor's diagonal positive.
inline ComplexMatrix haar_unitary(int d, SeededRng& rng) {
    if (d < 1) throw domain_error("haar_unitary: dimension must be >= 1");
    ComplexMatrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            z(i, j) = rng.cgauss();
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        cxd diag = r(j, j);
        double mag = std::abs(diag);
        q.col(j) *= (mag > 0.0) ? diag / mag : cxd(1.0, 0.0);
    }
    return q;
}

inline ComplexMatrix haar_unitary(int d, std::uint64_t seed) {
    SeededRng rng(seed);
    return haar_unitary(d, rng);
}

// Random mixed state of the given rank: normalized G G^dag with G an
// (dim_a*dim_b) x rank complex gaussian matrix.  This is the reduction of a
// uniformly random pure state on a rank-fold extension; rank 1 gives a pure
// bipartite state, full rank the Hilbert-Schmidt ensemble.
inline BipartiteState random_bipartite_state(int dim_a, int dim_b, int rank, SeededRng& rng,
                                             Factor measured = Factor::First) {
    if (dim_a < 1 || dim_b < 1)
        throw domain_error("random_bipartite_state: dimensions must be >= 1");
    const int n = dim_a * dim_b;
    if (rank < 1 || rank > n)
        throw domain_error("random_bipartite_state: rank must lie in [1, dim_a*dim_b], got " +
                           std::to_string(rank));
    ComplexMatrix g(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j)
            g(i, j) = rng.cgauss();
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()) / 2.0; // kill round-off asymmetry
    return BipartiteState(dim_a, dim_b, std::move(rho), measured);
}

inline BipartiteState random_bipartite_state(int dim_a, int dim_b, int rank, std::uint64_t seed,
                                             Factor measured = Factor::First) {
    SeededRng rng(seed);
    return random_bipartite_state(dim_a, dim_b, rank, rng, measured);
}

} // namespace eub
