#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "eub/states.hpp"

// Everything derived from a pair of measurement bases alone: the overlap
// matrix c_jk = |<u_j|v_k>|^2, its d largest entries c_1 >= ... >= c_d
// (counting multiplicity), the submatrix singular-value profile
//
//   s_0 = 0,  s_k = max { ||M|| : M an r x s submatrix of U, r + s = k + 1 },
//   s_d = 1,
//
// where U is the basis-change unitary and row/column subsets are arbitrary,
// and the derived quantities Omega_k = 1 + s_{k-1} (capped at 2) and
// W = (s_1, s_2 - s_1, ..., s_d - s_{d-1}).

namespace eub {

// The submatrix enumeration is exponential in d; refuse above this dimension
// unless explicitly overridden.
inline constexpr int kEnumerationCap = 12;

struct OverlapProfile {
    int dim = 0;
    RealMatrix c_matrix;           // c_jk
    ComplexMatrix u_matrix;        // <u_j|v_k>
    std::vector<double> c_sorted;  // c_1..c_d, descending
    std::vector<double> s_profile; // s_0..s_d (d+1 entries)
    std::vector<double> omega;     // Omega_1..Omega_2d
    std::vector<double> w;         // length d, sums to 1
    double projection_distance = 0.0; // set when an approximate seed matrix was regularized
};

// Amplitude matrix U_jk = <u_j|v_k> between two bases of equal dimension.
inline ComplexMatrix amplitude_matrix(const MeasurementBasis& r, const MeasurementBasis& s) {
    if (r.dim() != s.dim())
        throw contract_error("amplitude_matrix: basis dimensions differ (" +
                             std::to_string(r.dim()) + " vs " + std::to_string(s.dim()) + ")");
    return r.u.adjoint() * s.u;
}

inline RealMatrix overlap_matrix(const MeasurementBasis& r, const MeasurementBasis& s) {
    return amplitude_matrix(r, s).cwiseAbs2();
}

// The d largest entries of a d x d overlap matrix, multiplicities kept.
inline std::vector<double> top_overlaps(const RealMatrix& c) {
    const int d = static_cast<int>(c.rows());
    if (d == 0 || c.cols() != d)
        throw contract_error("top_overlaps: expected a non-empty square matrix");
    std::vector<double> all(c.data(), c.data() + c.size());
    std::sort(all.begin(), all.end(), std::greater<double>());
    all.resize(static_cast<size_t>(d));
    return all;
}

namespace detail {

// Advance an ascending index subset of {0..n-1} to the next combination.
inline bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline long double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0L;
    long double v = 1.0L;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

// Number of submatrices visited by a full s-profile enumeration in dim d.
inline long double submatrix_count(int d) {
    long double total = 0.0L;
    for (int k = 1; k <= d - 1; ++k)
        for (int r = 1; r <= k; ++r) {
            int s = k + 1 - r;
            if (r > d || s > d) continue;
            total += binomial(d, r) * binomial(d, s);
        }
    return total;
}

inline double submatrix_norm(const ComplexMatrix& u, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
    const int r = static_cast<int>(rows.size());
    const int s = static_cast<int>(cols.size());
    if (r == 1 || s == 1) { // a single row/column piece: plain 2-norm
        double sum = 0.0;
        for (int i : rows)
            for (int j : cols) sum += std::norm(u(i, j));
        return std::sqrt(sum);
    }
    ComplexMatrix sub(r, s);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) sub(i, j) = u(rows[static_cast<size_t>(i)],
                                                  cols[static_cast<size_t>(j)]);
    Eigen::JacobiSVD<ComplexMatrix> svd(sub);
    return svd.singularValues()(0);
}

} // namespace detail

// s_0..s_d by exhaustive submatrix enumeration.  s_d = 1 is set analytically
// (a full row of a unitary always reaches norm 1); the remaining values are
// maxima over all r x s index-subset submatrices with r + s = k + 1.
inline std::vector<double> submatrix_s_profile(const ComplexMatrix& u, bool override_cap = false,
                                               int cap = kEnumerationCap) {
    require_square(u, "submatrix_s_profile");
    const int d = static_cast<int>(u.rows());
    double dev = max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d));
    if (dev > tol::hermiticity)
        throw contract_error("submatrix_s_profile: input not unitary (max deviation " +
                             std::to_string(dev) + ")");
    if (d > cap && !override_cap) {
        long double count = detail::submatrix_count(d);
        throw capacity_error("submatrix_s_profile: dim " + std::to_string(d) +
                             " exceeds enumeration cap " + std::to_string(cap) + " (" +
                             std::to_string(static_cast<double>(count)) +
                             " submatrices); pass the override flag to force");
    }

    std::vector<double> s(static_cast<size_t>(d) + 1, 0.0);
    for (int k = 1; k <= d - 1; ++k) {
        double best = 0.0;
        for (int r = 1; r <= k; ++r) {
            const int c = k + 1 - r;
            if (r > d || c > d) continue;
            std::vector<int> rows(static_cast<size_t>(r));
            for (int i = 0; i < r; ++i) rows[static_cast<size_t>(i)] = i;
            do {
                std::vector<int> cols(static_cast<size_t>(c));
                for (int i = 0; i < c; ++i) cols[static_cast<size_t>(i)] = i;
                do {
                    double v = detail::submatrix_norm(u, rows, cols);
                    if (v > best) best = v;
                } while (detail::next_combination(cols, d));
            } while (detail::next_combination(rows, d));
        }
        // A norm cannot shrink when rows/columns are added, and can never
        // exceed 1 on a unitary; enforce both against round-off.
        s[static_cast<size_t>(k)] = std::min(std::max(best, s[static_cast<size_t>(k) - 1]), 1.0);
    }
    s[static_cast<size_t>(d)] = 1.0;
    return s;
}

// Omega_1..Omega_2d and W from an s-profile.  Omega_k = 1 + s_{k-1} while the
// index stays within the profile, and exactly 2 from k = d + 1 on.
inline std::pair<std::vector<double>, std::vector<double>> omega_and_w(
    const std::vector<double>& s) {
    if (s.size() < 2 || s.front() != 0.0)
        throw contract_error("omega_and_w: s-profile must start at s_0 = 0");
    const int d = static_cast<int>(s.size()) - 1;
    std::vector<double> omega(static_cast<size_t>(2 * d));
    for (int k = 1; k <= 2 * d; ++k)
        omega[static_cast<size_t>(k) - 1] =
            (k <= d + 1) ? 1.0 + s[static_cast<size_t>(k) - 1] : 2.0;
    std::vector<double> w(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i)
        w[static_cast<size_t>(i)] = s[static_cast<size_t>(i) + 1] - s[static_cast<size_t>(i)];
    return {std::move(omega), std::move(w)};
}

// Full profile for a basis pair, with the structural invariants checked.
inline OverlapProfile make_overlap_profile(const MeasurementBasis& r, const MeasurementBasis& s,
                                           bool override_cap = false,
                                           int cap = kEnumerationCap) {
    OverlapProfile p;
    p.dim = r.dim();
    p.u_matrix = amplitude_matrix(r, s);
    p.c_matrix = p.u_matrix.cwiseAbs2();
    p.c_sorted = top_overlaps(p.c_matrix);
    p.s_profile = submatrix_s_profile(p.u_matrix, override_cap, cap);
    auto ow = omega_and_w(p.s_profile);
    p.omega = std::move(ow.first);
    p.w = std::move(ow.second);

    const int d = p.dim;
    for (int i = 0; i < d; ++i) {
        double row = p.c_matrix.row(i).sum();
        double col = p.c_matrix.col(i).sum();
        if (std::abs(row - 1.0) > tol::hermiticity || std::abs(col - 1.0) > tol::hermiticity)
            throw contract_error("make_overlap_profile: overlap matrix not doubly stochastic");
    }
    if (p.c_sorted.front() > 1.0 + tol::hermiticity ||
        p.c_sorted.back() < 1.0 / d - 1e-12)
        throw contract_error("make_overlap_profile: sorted overlaps out of range");
    if (std::abs(p.s_profile[1] - std::sqrt(p.c_sorted.front())) > tol::hermiticity)
        throw contract_error("make_overlap_profile: s_1 != sqrt(c_1)");
    return p;
}

} // namespace eub
