#include <gtest/gtest.h>

#include <cmath>

#include "eub/entropy.hpp"
#include "support/oracles.hpp"

using namespace eub;

namespace {

// (|00> + |11>)/sqrt(2) projector, measured on the first qubit.
BipartiteState maximally_entangled_pair() {
    ComplexMatrix phi = ComplexMatrix::Zero(4, 4);
    for (int i : {0, 3})
        for (int j : {0, 3}) phi(i, j) = 0.5;
    return BipartiteState(2, 2, phi, Factor::First);
}

} // namespace

TEST(Shannon, PointMassAndFairCoin) {
    EXPECT_NEAR(shannon_entropy({1.0, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(shannon_entropy({0.5, 0.5}), 1.0, 1e-15);
}

TEST(Shannon, FrozenTwoPointValue) {
    // H(1/sqrt(2), 1 - 1/sqrt(2))
    double a = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(shannon_entropy({a, 1.0 - a}), 0.872429339856468, 1e-12);
    EXPECT_NEAR(shannon_entropy({0.70711, 0.29289}), 0.87243, 1e-4);
}

TEST(Shannon, ClampsTinyNegatives) {
    EXPECT_NEAR(shannon_entropy({1.0 + 1e-13, -1e-13}), 0.0, 1e-11);
    EXPECT_THROW(shannon_entropy({1.1, -0.1}), contract_error);
    EXPECT_THROW(shannon_entropy({0.4, 0.4}), contract_error); // sums to 0.8
}

TEST(VonNeumann, PureAndMaximallyMixed) {
    ComplexMatrix pure = ComplexMatrix::Zero(3, 3);
    pure(1, 1) = 1.0;
    EXPECT_NEAR(von_neumann_entropy(pure), 0.0, 1e-12);
    for (int d : {2, 3, 4})
        EXPECT_NEAR(von_neumann_entropy(ComplexMatrix::Identity(d, d) / d),
                    std::log2(static_cast<double>(d)), 1e-12);
}

TEST(VonNeumann, ConsistentWithEigenvalueRoute) {
    BipartiteState st = paper_state(0.5);
    ComplexMatrix rho_b = measured_marginal(st); // 4x4 reduction
    auto ev = clamp_spectrum(hermitian_eigenvalues(rho_b), "test");
    double direct = 0.0;
    for (double x : ev)
        if (x > 0.0) direct -= x * std::log2(x);
    EXPECT_NEAR(von_neumann_entropy(rho_b), direct, 1e-12);
}

TEST(VonNeumann, RejectsNonDensity) {
    EXPECT_THROW(von_neumann_entropy(ComplexMatrix::Identity(2, 2)), contract_error);
}

TEST(MeasurementDistribution, UniformOnMaximallyMixed) {
    BipartiteState mixed(3, 2, ComplexMatrix::Identity(6, 6) / 6.0, Factor::First);
    for (double p : measurement_distribution(mixed, fourier_basis(3)))
        EXPECT_NEAR(p, 1.0 / 3.0, 1e-12);
}

TEST(MeasurementDistribution, PureStateInOwnBasis) {
    auto [r, s] = paper_bases();
    ComplexMatrix proj = r.vector(0) * r.vector(0).adjoint();
    BipartiteState st(4, 1, proj, Factor::First); // trivial memory
    auto p = measurement_distribution(st, r);
    EXPECT_NEAR(p[0], 1.0, 1e-12);
    for (size_t j = 1; j < p.size(); ++j) EXPECT_NEAR(p[j], 0.0, 1e-12);
}

TEST(MeasurementDistribution, StandardBasisReadsDiagonal) {
    BipartiteState st = paper_state(0.5);
    auto q = measurement_distribution(st, standard_basis(4));
    ComplexMatrix rho_b = measured_marginal(st);
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(q[static_cast<size_t>(k)], rho_b(k, k).real(), 1e-13);
        sum += q[static_cast<size_t>(k)];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(MeasurementDistribution, RejectsWrongDimension) {
    BipartiteState st = paper_state(0.5); // measured factor has dim 4
    EXPECT_THROW(measurement_distribution(st, standard_basis(2)), contract_error);
}

TEST(PostMeasurement, FixedPointWhenAlreadyDephased) {
    // block-diagonal in standard (x) anything: two classical branches
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(0, 0) = 0.3;
    rho(1, 1) = 0.2;
    rho.block(2, 2, 2, 2) << 0.3, 0.1, 0.1, 0.2;
    BipartiteState st(2, 2, rho, Factor::First);
    BipartiteState out = post_measurement_state(st, standard_basis(2));
    EXPECT_NEAR(max_abs(out.rho - rho), 0.0, 1e-12);
}

TEST(PostMeasurement, DephasesMaximallyEntangledPair) {
    BipartiteState out = post_measurement_state(maximally_entangled_pair(), standard_basis(2));
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    EXPECT_NEAR(max_abs(out.rho - expect), 0.0, 1e-13);
}

TEST(PostMeasurement, TracePreservedAndMemoryMarginalKept) {
    BipartiteState st = paper_state(0.3);
    auto [r, s] = paper_bases();
    BipartiteState out = post_measurement_state(st, r);
    EXPECT_NEAR(out.rho.trace().real(), 1.0, 1e-13);
    // memory marginal (the non-measured factor) is untouched by pinching
    ComplexMatrix before = partial_trace(st.canonical_rho(), 4, 2, Factor::First);
    ComplexMatrix after = partial_trace(out.rho, 4, 2, Factor::First);
    EXPECT_NEAR(max_abs(before - after), 0.0, 1e-12);
}

TEST(PostMeasurement, EntropyNeverDecreases) {
    SeededRng rng(50);
    for (int t = 0; t < 20; ++t) {
        int dm = 2 + t % 3, dmem = 1 + t % 2;
        BipartiteState st = random_bipartite_state(dm, dmem, 1 + t % (dm * dmem), rng);
        MeasurementBasis b(haar_unitary(dm, rng));
        double before = von_neumann_entropy(st.rho);
        double after = von_neumann_entropy(post_measurement_state(st, b).rho);
        EXPECT_GE(after, before - 1e-9);
    }
}

TEST(ConditionalEntropies, MaximallyEntangledPair) {
    auto ce = conditional_entropies(maximally_entangled_pair(), standard_basis(2),
                                    fourier_basis(2));
    EXPECT_NEAR(ce.h_a_given_b, -1.0, 1e-12);
    // both dephased states have two eigenvalues 1/2 and H(rho_B) = 1
    EXPECT_NEAR(ce.h_r_given_b, 0.0, 1e-12);
    EXPECT_NEAR(ce.h_s_given_b, 0.0, 1e-12);
}

TEST(ConditionalEntropies, ProductStateWithEigenbasis) {
    SeededRng rng(51);
    ComplexMatrix u = haar_unitary(3, rng);
    Eigen::Vector3d lam(0.5, 0.3, 0.2);
    ComplexMatrix rho_a = u * lam.asDiagonal().toDenseMatrix().cast<cxd>() * u.adjoint();
    rho_a = (rho_a + rho_a.adjoint()) / 2.0;
    ComplexMatrix rho_b = ComplexMatrix::Zero(2, 2);
    rho_b(0, 0) = 0.7;
    rho_b(1, 1) = 0.3;
    BipartiteState st(3, 2, kronecker(rho_a, rho_b), Factor::First);
    auto ce = conditional_entropies(st, MeasurementBasis(u), fourier_basis(3));
    double h_a = shannon_entropy({0.5, 0.3, 0.2});
    EXPECT_NEAR(ce.h_r_given_b, h_a, 1e-10); // no correlations, eigenbasis measurement
    EXPECT_NEAR(ce.h_a_given_b, h_a, 1e-10);
}

TEST(ConditionalEntropies, PinchingCannotDecrease) {
    SeededRng rng(52);
    for (int t = 0; t < 20; ++t) {
        int dm = 2 + t % 3, dmem = 1 + t % 3;
        int rank = 1 + t % (dm * dmem);
        // exercise both tensor orientations of the measured factor
        BipartiteState st = (t % 2 == 0)
            ? random_bipartite_state(dm, dmem, rank, rng, Factor::First)
            : random_bipartite_state(dmem, dm, rank, rng, Factor::Second);
        MeasurementBasis r(haar_unitary(st.measured_dim(), rng));
        MeasurementBasis s(haar_unitary(st.measured_dim(), rng));
        auto ce = conditional_entropies(st, r, s);
        EXPECT_GE(ce.h_r_given_b, ce.h_a_given_b - 1e-9);
        EXPECT_GE(ce.h_s_given_b, ce.h_a_given_b - 1e-9);
    }
}

TEST(RelativeEntropy, SelfIsZero) {
    BipartiteState st = paper_state(0.6);
    EXPECT_NEAR(relative_entropy(st.rho, st.rho), 0.0, 1e-10);
}

TEST(RelativeEntropy, PureVsMaximallyMixed) {
    ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    EXPECT_NEAR(relative_entropy(pure, ComplexMatrix::Identity(2, 2) / 2.0), 1.0, 1e-12);
}

TEST(RelativeEntropy, FrozenTwoLevelValue) {
    // D(I/2 || diag(1/4, 3/4)) = 1 - log2(3)/2
    ComplexMatrix sigma = ComplexMatrix::Zero(2, 2);
    sigma(0, 0) = 0.25;
    sigma(1, 1) = 0.75;
    EXPECT_NEAR(relative_entropy(ComplexMatrix::Identity(2, 2) / 2.0, sigma),
                0.207518749639422, 1e-12);
}

TEST(RelativeEntropy, InfiniteOutsideSupport) {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2), sigma = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    sigma(1, 1) = 1.0;
    EXPECT_TRUE(std::isinf(relative_entropy(rho, sigma)));
}

TEST(RelativeEntropy, RejectsNonPsdSigma) {
    ComplexMatrix sigma = ComplexMatrix::Identity(2, 2);
    sigma(1, 1) = -0.5;
    EXPECT_THROW(relative_entropy(ComplexMatrix::Identity(2, 2) / 2.0, sigma), contract_error);
}

TEST(RelativeEntropy, PinchingIdentity) {
    // H(S|B) - H(A|B) = D(rho || pinched rho) for random instances
    SeededRng rng(53);
    for (int t = 0; t < 20; ++t) {
        int dm = 2 + t % 3, dmem = 1 + t % 3;
        BipartiteState st = random_bipartite_state(dm, dmem, 1 + t % (dm * dmem), rng);
        MeasurementBasis s(haar_unitary(dm, rng));
        auto ce = conditional_entropies(st, s, s);
        ComplexMatrix canonical = st.canonical_rho();
        double d = relative_entropy(canonical, pinch_first_factor(canonical, s, dmem));
        EXPECT_NEAR(ce.h_s_given_b - ce.h_a_given_b, d, 1e-8);
    }
}

TEST(RelativeEntropy, DataProcessingUnderPinching) {
    // D(pinch rho || pinch sigma) <= D(rho || sigma)
    SeededRng rng(54);
    for (int t = 0; t < 10; ++t) {
        int dm = 2 + t % 2, dmem = 2;
        BipartiteState a = random_bipartite_state(dm, dmem, dm * dmem, rng);
        BipartiteState b = random_bipartite_state(dm, dmem, dm * dmem, rng);
        MeasurementBasis m(haar_unitary(dm, rng));
        double before = relative_entropy(a.rho, b.rho);
        double after = relative_entropy(pinch_first_factor(a.rho, m, dmem),
                                        pinch_first_factor(b.rho, m, dmem));
        EXPECT_LE(after, before + 1e-8);
    }
}
