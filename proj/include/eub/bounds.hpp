#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eub/entropy.hpp"
#include "eub/overlap.hpp"

// The uncertainty bounds.  With c_1 >= ... >= c_d the sorted overlaps,
// mu = log2(1/c_1) and H(A|B) the conditional entropy of the input state:
//
//   berta        = mu + H(A|B)
//   coles_piani  = mu + (1-sqrt(c_1))/2 * log2(c_1/c_2) + H(A|B)
//   theorem_new  = mu + sum_{i=1}^{d-1} (2-Omega_2i)/2 * log2(c_i/c_{i+1}) + H(A|B)
//   corollary    = theorem_new without the H(A|B) term (bounds H(R)+H(S))
//   H(W)         = Shannon entropy of the s-increment vector W
//
// plus two state-dependent bounds from the proof chain (an average over row
// and column maxima, and a sorted pairing form).  The i = 1 term of the big
// sum is exactly the Coles-Piani correction since Omega_2 = 1 + sqrt(c_1);
// terms with 2i >= d+1 vanish identically because Omega caps at 2.

namespace eub {

inline double maassen_uffink(const OverlapProfile& p) {
    return std::log2(1.0 / p.c_sorted.front());
}

namespace detail {

// Coefficient guard: a term whose coefficient is zero to working precision
// contributes exactly 0, before any log ratio is evaluated.
inline constexpr double kCoeffZero = 1e-12;

inline double theorem_correction(const OverlapProfile& p) {
    double sum = 0.0;
    for (int i = 1; i <= p.dim - 1; ++i) {
        double coeff = (2.0 - p.omega[static_cast<size_t>(2 * i) - 1]) / 2.0;
        if (std::abs(coeff) <= kCoeffZero) continue;
        sum += coeff * std::log2(p.c_sorted[static_cast<size_t>(i) - 1] /
                                 p.c_sorted[static_cast<size_t>(i)]);
    }
    return sum;
}

inline double coles_piani_correction(const OverlapProfile& p) {
    if (p.dim < 2) return 0.0;
    double c1 = p.c_sorted[0];
    double coeff = (1.0 - std::sqrt(c1)) / 2.0;
    if (std::abs(coeff) <= kCoeffZero) return 0.0;
    return coeff * std::log2(c1 / p.c_sorted[1]);
}

// Permutation of 0..d-1 by descending key, ties broken by ascending index.
inline std::vector<int> descending_order(const std::vector<double>& key) {
    std::vector<int> idx(key.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return key[static_cast<size_t>(a)] > key[static_cast<size_t>(b)];
    });
    return idx;
}

} // namespace detail

inline double berta(const OverlapProfile& p, double h_a_given_b) {
    return maassen_uffink(p) + h_a_given_b;
}

inline double coles_piani(const OverlapProfile& p, double h_a_given_b) {
    return maassen_uffink(p) + detail::coles_piani_correction(p) + h_a_given_b;
}

inline double theorem_new(const OverlapProfile& p, double h_a_given_b) {
    return maassen_uffink(p) + detail::theorem_correction(p) + h_a_given_b;
}

// State-independent part of the theorem; valid against H(R)+H(S).
inline double corollary_new(const OverlapProfile& p) {
    return maassen_uffink(p) + detail::theorem_correction(p);
}

// Shannon entropy of W: the state-independent direct-sum majorization bound.
inline double direct_sum_majorization(const OverlapProfile& p) {
    return shannon_entropy(p.w);
}

// H(A|B) - 1/2 (sum_j p_j log2 max_k c_jk + sum_k q_k log2 max_j c_jk).
inline double state_dep_avg(const OverlapProfile& prof, const std::vector<double>& p,
                            const std::vector<double>& q, double h_a_given_b) {
    double sum = 0.0;
    for (int j = 0; j < prof.dim; ++j)
        sum += p[static_cast<size_t>(j)] * std::log2(prof.c_matrix.row(j).maxCoeff());
    for (int k = 0; k < prof.dim; ++k)
        sum += q[static_cast<size_t>(k)] * std::log2(prof.c_matrix.col(k).maxCoeff());
    return h_a_given_b - sum / 2.0;
}

// Sorted-pairing form: rows ordered by descending row maximum of c (ties by
// ascending index), columns likewise; the i-th pair is charged against c_i.
inline double state_dep_sorted(const OverlapProfile& prof, const std::vector<double>& p,
                               const std::vector<double>& q, double h_a_given_b) {
    const int d = prof.dim;
    std::vector<double> row_max(static_cast<size_t>(d)), col_max(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        row_max[static_cast<size_t>(i)] = prof.c_matrix.row(i).maxCoeff();
        col_max[static_cast<size_t>(i)] = prof.c_matrix.col(i).maxCoeff();
    }
    auto rows = detail::descending_order(row_max);
    auto cols = detail::descending_order(col_max);
    double c1 = prof.c_sorted.front();
    double sum = 0.0;
    for (int i = 2; i <= d; ++i) {
        double pq = p[static_cast<size_t>(rows[static_cast<size_t>(i) - 1])] +
                    q[static_cast<size_t>(cols[static_cast<size_t>(i) - 1])];
        sum += pq / 2.0 * std::log2(c1 / prof.c_sorted[static_cast<size_t>(i) - 1]);
    }
    return h_a_given_b + maassen_uffink(prof) + sum;
}

struct EntropicLhs {
    double conditional = 0.0; // H(R|B) + H(S|B)
    double shannon = 0.0;     // H(R) + H(S)
};

inline EntropicLhs entropic_lhs(const BipartiteState& state, const MeasurementBasis& r,
                                const MeasurementBasis& s) {
    auto cond = conditional_entropies(state, r, s);
    EntropicLhs out;
    out.conditional = cond.h_r_given_b + cond.h_s_given_b;
    out.shannon = shannon_entropy(measurement_distribution(state, r)) +
                  shannon_entropy(measurement_distribution(state, s));
    return out;
}

struct BoundReport {
    double lhs_conditional = 0.0;
    double lhs_shannon = 0.0;
    double h_a_given_b = 0.0;
    double mu = 0.0;
    double berta = 0.0;
    double coles_piani = 0.0;
    double theorem_new = 0.0;
    double corollary_new = 0.0;
    double direct_sum_majorization = 0.0;
    double state_dep_avg = 0.0;
    double state_dep_sorted = 0.0;
    OverlapProfile profile;
};

// Report assembly against an already-computed profile (parameter sweeps reuse
// one profile across every grid point; the bases there never change).
inline BoundReport bound_report_with_profile(const BipartiteState& state,
                                             const MeasurementBasis& r,
                                             const MeasurementBasis& s,
                                             OverlapProfile profile) {
    if (r.dim() != state.measured_dim() || s.dim() != state.measured_dim())
        throw contract_error("bound_report: basis dim != measured factor dim");
    BoundReport rep;
    rep.profile = std::move(profile);
    auto cond = conditional_entropies(state, r, s);
    rep.h_a_given_b = cond.h_a_given_b;
    rep.lhs_conditional = cond.h_r_given_b + cond.h_s_given_b;
    auto p = measurement_distribution(state, r);
    auto q = measurement_distribution(state, s);
    rep.lhs_shannon = shannon_entropy(p) + shannon_entropy(q);
    rep.mu = maassen_uffink(rep.profile);
    rep.berta = berta(rep.profile, rep.h_a_given_b);
    rep.coles_piani = coles_piani(rep.profile, rep.h_a_given_b);
    rep.theorem_new = theorem_new(rep.profile, rep.h_a_given_b);
    rep.corollary_new = corollary_new(rep.profile);
    rep.direct_sum_majorization = direct_sum_majorization(rep.profile);
    rep.state_dep_avg = state_dep_avg(rep.profile, p, q, rep.h_a_given_b);
    rep.state_dep_sorted = state_dep_sorted(rep.profile, p, q, rep.h_a_given_b);
    return rep;
}

// One consistent report for a (state, basis pair) instance.
inline BoundReport bound_report(const BipartiteState& state, const MeasurementBasis& r,
                                const MeasurementBasis& s, bool override_cap = false) {
    return bound_report_with_profile(state, r, s, make_overlap_profile(r, s, override_cap));
}

struct InequalityCheck {
    std::string name;
    double margin = 0.0; // lhs - rhs; negative means the inequality is violated
};

// Every inequality a valid report must satisfy, with its signed margin.
inline std::vector<InequalityCheck> inequality_checks(const BoundReport& r) {
    std::vector<InequalityCheck> v;
    auto add = [&v](const char* name, double lhs, double rhs) {
        v.push_back({name, lhs - rhs});
    };
    add("lhs_conditional >= berta", r.lhs_conditional, r.berta);
    add("lhs_conditional >= coles_piani", r.lhs_conditional, r.coles_piani);
    add("lhs_conditional >= theorem_new", r.lhs_conditional, r.theorem_new);
    add("lhs_conditional >= state_dep_sorted", r.lhs_conditional, r.state_dep_sorted);
    add("lhs_conditional >= state_dep_avg", r.lhs_conditional, r.state_dep_avg);
    add("state_dep_avg >= state_dep_sorted", r.state_dep_avg, r.state_dep_sorted);
    add("state_dep_sorted >= theorem_new", r.state_dep_sorted, r.theorem_new);
    add("theorem_new >= coles_piani", r.theorem_new, r.coles_piani);
    add("coles_piani >= berta", r.coles_piani, r.berta);
    add("lhs_shannon >= maassen_uffink", r.lhs_shannon, r.mu);
    add("lhs_shannon >= corollary_new", r.lhs_shannon, r.corollary_new);
    add("lhs_shannon >= direct_sum_majorization", r.lhs_shannon, r.direct_sum_majorization);
    return v;
}

// First violated inequality at the given slack, if any.
inline std::optional<std::string> check_report(const BoundReport& r,
                                               double slack = tol::chain_slack) {
    for (const auto& chk : inequality_checks(r))
        if (chk.margin < -slack)
            return chk.name + " violated by " + std::to_string(-chk.margin);
    return std::nullopt;
}

} // namespace eub
