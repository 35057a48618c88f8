#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "eub/states.hpp"

// Shannon / von Neumann entropies, measurement statistics, the dephasing
// (pinching) channel, conditional entropies and the quantum relative entropy.
// All logarithms are base 2.

namespace eub {

// Clamp a probability-like vector: entries in [-1e-12, 0) become 0, anything
// more negative is a contract violation.  The sum is checked against 1.
inline std::vector<double> validate_distribution(std::vector<double> p,
                                                 const char* who = "distribution") {
    double sum = 0.0;
    for (double& x : p) {
        if (x < tol::dist_floor)
            throw contract_error(std::string(who) + ": negative probability " +
                                 std::to_string(x));
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol::hermiticity)
        throw contract_error(std::string(who) + ": probabilities sum to " + std::to_string(sum));
    return p;
}

// H(p) = -sum p log2 p with 0 log 0 := 0.
inline double shannon_entropy(const std::vector<double>& probs) {
    auto p = validate_distribution(probs, "shannon_entropy");
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

// Eigenvalue clamp shared by every von Neumann entropy: [-1e-10, 0) -> 0,
// below that is an error (the input was not a density matrix).
inline std::vector<double> clamp_spectrum(std::vector<double> ev, const char* who) {
    for (double& x : ev) {
        if (x < tol::eig_floor)
            throw contract_error(std::string(who) + ": eigenvalue " + std::to_string(x) +
                                 " below the PSD floor");
        if (x < 0.0) x = 0.0;
    }
    return ev;
}

inline double von_neumann_entropy(const ComplexMatrix& rho) {
    require_hermitian(rho, "von_neumann_entropy");
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > tol::hermiticity)
        throw contract_error("von_neumann_entropy: trace = " + std::to_string(tr));
    auto ev = clamp_spectrum(hermitian_eigenvalues(rho), "von_neumann_entropy");
    double h = 0.0;
    for (double x : ev)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

// Reduced state of the factor the measurement acts on.
inline ComplexMatrix measured_marginal(const BipartiteState& state) {
    return partial_trace(state.rho, state.dim_a, state.dim_b,
                         state.measured == Factor::First ? Factor::Second : Factor::First);
}

// Born probabilities p_j = <u_j| rho_measured |u_j>.
inline std::vector<double> measurement_distribution(const BipartiteState& state,
                                                    const MeasurementBasis& basis) {
    if (basis.dim() != state.measured_dim())
        throw contract_error("measurement_distribution: basis dim " +
                             std::to_string(basis.dim()) + " != measured factor dim " +
                             std::to_string(state.measured_dim()));
    ComplexMatrix marg = measured_marginal(state);
    ComplexMatrix diag = basis.u.adjoint() * marg * basis.u;
    std::vector<double> p(static_cast<size_t>(basis.dim()));
    for (int j = 0; j < basis.dim(); ++j) p[static_cast<size_t>(j)] = diag(j, j).real();
    return validate_distribution(std::move(p), "measurement_distribution");
}

// Pinching in the given basis on the FIRST factor of a canonically oriented
// bipartite operator: rho -> sum_j (|u_j><u_j| (x) I) rho (|u_j><u_j| (x) I).
// Implemented by rotating to the measurement basis, keeping only the d
// diagonal blocks, and rotating back.
inline ComplexMatrix pinch_first_factor(const ComplexMatrix& rho_canonical,
                                        const MeasurementBasis& basis, int dim_memory) {
    const int d = basis.dim();
    const Eigen::Index n = static_cast<Eigen::Index>(d) * dim_memory;
    if (rho_canonical.rows() != n || rho_canonical.cols() != n)
        throw contract_error("pinch_first_factor: dimension mismatch");
    ComplexMatrix big = kronecker(basis.u, ComplexMatrix::Identity(dim_memory, dim_memory));
    ComplexMatrix rot = big.adjoint() * rho_canonical * big;
    ComplexMatrix kept = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < d; ++j)
        kept.block(static_cast<Eigen::Index>(j) * dim_memory,
                   static_cast<Eigen::Index>(j) * dim_memory, dim_memory, dim_memory) =
            rot.block(static_cast<Eigen::Index>(j) * dim_memory,
                      static_cast<Eigen::Index>(j) * dim_memory, dim_memory, dim_memory);
    ComplexMatrix out = big * kept * big.adjoint();
    return (out + out.adjoint()) / 2.0; // kill round-off asymmetry
}

// The classical-quantum state after measuring the declared factor in `basis`.
// Output is in canonical orientation: measured factor first.
inline BipartiteState post_measurement_state(const BipartiteState& state,
                                             const MeasurementBasis& basis) {
    if (basis.dim() != state.measured_dim())
        throw contract_error("post_measurement_state: basis dim mismatch");
    ComplexMatrix pinched = pinch_first_factor(state.canonical_rho(), basis,
                                               state.memory_dim());
    return BipartiteState(state.measured_dim(), state.memory_dim(), std::move(pinched),
                          Factor::First);
}

struct ConditionalEntropies {
    double h_r_given_b = 0.0;
    double h_s_given_b = 0.0;
    double h_a_given_b = 0.0;
};

// H(R|B), H(S|B), H(A|B), all conditioned on the non-measured (memory) factor.
inline ConditionalEntropies conditional_entropies(const BipartiteState& state,
                                                  const MeasurementBasis& r,
                                                  const MeasurementBasis& s) {
    if (r.dim() != state.measured_dim() || s.dim() != state.measured_dim())
        throw contract_error("conditional_entropies: basis dim mismatch");
    ComplexMatrix canonical = state.canonical_rho();
    const int dm = state.measured_dim();
    const int dmem = state.memory_dim();
    ComplexMatrix rho_mem = partial_trace(canonical, dm, dmem, Factor::First);
    double h_mem = von_neumann_entropy(rho_mem);
    ConditionalEntropies out;
    out.h_a_given_b = von_neumann_entropy(canonical) - h_mem;
    out.h_r_given_b = von_neumann_entropy(pinch_first_factor(canonical, r, dmem)) - h_mem;
    out.h_s_given_b = von_neumann_entropy(pinch_first_factor(canonical, s, dmem)) - h_mem;
    return out;
}

// D(rho || sigma) = Tr(rho log rho) - Tr(rho log sigma), +infinity when rho's
// support sticks out of sigma's (eigenvalues below 1e-10 count as zero).
inline double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    require_hermitian(rho, "relative_entropy(rho)");
    require_hermitian(sigma, "relative_entropy(sigma)");
    if (rho.rows() != sigma.rows())
        throw contract_error("relative_entropy: dimension mismatch");
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > tol::hermiticity)
        throw contract_error("relative_entropy: rho trace = " + std::to_string(tr));
    auto rho_ev = clamp_spectrum(hermitian_eigenvalues(rho), "relative_entropy(rho)");

    Eigensystem sig = hermitian_eigensystem(sigma);
    if (sig.values.back() < tol::eig_floor)
        throw contract_error("relative_entropy: sigma has eigenvalue " +
                             std::to_string(sig.values.back()) + ", not PSD");

    // rho in sigma's eigenbasis; diagonal gives the weight on each eigenspace.
    ComplexMatrix rho_in_sigma = sig.vectors.adjoint() * rho * sig.vectors;
    double tr_rho_log_rho = 0.0;
    for (double x : rho_ev)
        if (x > 0.0) tr_rho_log_rho += x * std::log2(x);
    double tr_rho_log_sigma = 0.0;
    double leak = 0.0; // rho weight on sigma's kernel
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
        double weight = std::max(rho_in_sigma(i, i).real(), 0.0);
        double t = sig.values[static_cast<size_t>(i)];
        if (t > tol::support_threshold)
            tr_rho_log_sigma += weight * std::log2(t);
        else
            leak += weight;
    }
    if (leak > tol::support_threshold) return std::numeric_limits<double>::infinity();
    return tr_rho_log_rho - tr_rho_log_sigma;
}

} // namespace eub
