#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "eub/errors.hpp"

// Dense complex kernel used by everything else. Conventions that the rest of
// the library relies on:
//
//  * Tensor products put the FIRST factor on the slow index: the row index of
//    kron(a, b) is i_a * rows(b) + i_b.  partial_trace and swap_factors use
//    the same convention, so round-trips are exact.
//  * One tolerance knob (tol::hermiticity = 1e-10) covers Hermiticity,
//    orthonormality and unitarity checks throughout the library.
//  * Eigenvalues of density matrices may drift slightly negative in floating
//    point; values in [-1e-10, 0) are clamped to 0, anything below is an error.

namespace eub {

using cxd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

namespace tol {
// Input validation (Hermiticity / orthonormality / unitarity).
inline constexpr double hermiticity = 1e-10;
// Eigenvalues of density matrices below this are a contract violation;
// values in [eig_floor, 0) are treated as 0.
inline constexpr double eig_floor = -1e-10;
// Probability entries may sit this far below zero before being an error.
inline constexpr double dist_floor = -1e-12;
// nearest_unitary must return a matrix unitary to this accuracy.
inline constexpr double unitary_out = 1e-12;
// partial_trace must preserve the trace to this accuracy.
inline constexpr double trace_preserve = 1e-12;
// Slack allowed when checking bound chains / validity inequalities.
inline constexpr double chain_slack = 1e-9;
// Accuracy demanded of the conditional-entropy / relative-entropy identity.
inline constexpr double pinch_identity = 1e-8;
// Eigenvalues of sigma below this count as outside its support in D(rho||sigma).
inline constexpr double support_threshold = 1e-10;
} // namespace tol

enum class Factor { First, Second };

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double eps = tol::hermiticity) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= eps;
}

inline void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw contract_error(std::string(who) + ": matrix must be square and non-empty, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

inline void require_hermitian(const ComplexMatrix& m, const char* who) {
    require_square(m, who);
    double dev = max_abs(m - m.adjoint());
    if (dev > tol::hermiticity)
        throw contract_error(std::string(who) + ": matrix not Hermitian (max |m - m^dag| = " +
                             std::to_string(dev) + ")");
}

// All real eigenvalues of a Hermitian matrix, sorted descending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    require_hermitian(m, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw contract_error("hermitian_eigenvalues: eigensolver did not converge");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(ev.begin(), ev.end(), std::greater<double>()); // Eigen returns ascending
    return ev;
}

struct Eigensystem {
    std::vector<double> values;   // descending
    ComplexMatrix vectors;        // columns, same order as values
};

inline Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    require_hermitian(m, "hermitian_eigensystem");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success)
        throw contract_error("hermitian_eigensystem: eigensolver did not converge");
    const auto n = m.rows();
    Eigensystem out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) { // reverse into descending order
        out.values[static_cast<size_t>(i)] = es.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

// Operator norm (largest singular value).
inline double largest_singular_value(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw contract_error("largest_singular_value: empty matrix");
    if (m.rows() == 1 || m.cols() == 1) return m.norm(); // vector: 2-norm
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

inline ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.size() == 0 || b.size() == 0)
        throw contract_error("kronecker: empty factor");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Trace out one tensor factor of a (dim_first*dim_second)-dimensional operator.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_first, int dim_second,
                                   Factor traced) {
    if (dim_first < 1 || dim_second < 1)
        throw contract_error("partial_trace: factor dimensions must be >= 1");
    const Eigen::Index n = static_cast<Eigen::Index>(dim_first) * dim_second;
    if (m.rows() != n || m.cols() != n)
        throw contract_error("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " but dims declare " + std::to_string(n));
    if (traced == Factor::First) {
        ComplexMatrix out = ComplexMatrix::Zero(dim_second, dim_second);
        for (int k = 0; k < dim_first; ++k)
            out += m.block(static_cast<Eigen::Index>(k) * dim_second,
                           static_cast<Eigen::Index>(k) * dim_second, dim_second, dim_second);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i)
        for (int j = 0; j < dim_first; ++j)
            out(i, j) = m.block(static_cast<Eigen::Index>(i) * dim_second,
                                static_cast<Eigen::Index>(j) * dim_second, dim_second, dim_second)
                            .trace();
    return out;
}

// Reorder a (dim_first x dim_second) bipartite operator so the factors swap slots.
inline ComplexMatrix swap_factors(const ComplexMatrix& m, int dim_first, int dim_second) {
    const Eigen::Index n = static_cast<Eigen::Index>(dim_first) * dim_second;
    if (m.rows() != n || m.cols() != n)
        throw contract_error("swap_factors: dimension mismatch");
    ComplexMatrix out(n, n);
    for (int ia = 0; ia < dim_first; ++ia)
        for (int ib = 0; ib < dim_second; ++ib)
            for (int ja = 0; ja < dim_first; ++ja)
                for (int jb = 0; jb < dim_second; ++jb)
                    out(static_cast<Eigen::Index>(ib) * dim_first + ia,
                        static_cast<Eigen::Index>(jb) * dim_first + ja) =
                        m(static_cast<Eigen::Index>(ia) * dim_second + ib,
                          static_cast<Eigen::Index>(ja) * dim_second + jb);
    return out;
}

// Unitary polar factor: the closest unitary to m (in Frobenius norm).
inline ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
    require_square(m, "nearest_unitary");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0) || sv(sv.size() - 1) <= 0.0)
        throw contract_error("nearest_unitary: matrix is singular to working precision");
    ComplexMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    double dev = max_abs(u.adjoint() * u - ComplexMatrix::Identity(m.rows(), m.rows()));
    if (dev > tol::unitary_out)
        throw contract_error("nearest_unitary: polar factor failed unitarity check");
    return u;
}

} // namespace eub
