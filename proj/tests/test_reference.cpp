#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qdtele/reference.hpp"

using namespace qdtele;

TEST(Bennett, IntermediateMatchesCnot) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto [a, b] = oracle::random_pair(rng);
        const BennettSource src(a, b);
        const auto via_gate = apply(cnot(), {bennett::Ap, bennett::A}, bennett_input(src));
        ASSERT_LE(max_abs_diff(via_gate, intermediate_phi1(src)), 1e-15);
    }
}

TEST(Bennett, IntermediateCoefficients) {
    const BennettSource src(Amplitude(0.6, 0.0), Amplitude(0.0, 0.8));
    const auto s = intermediate_phi1(src);
    EXPECT_NEAR(std::abs(s.amp("000") - src.a * kInvSqrt2), 0.0, 1e-15);
    EXPECT_EQ(s.amp("100"), Amplitude(0.0));
}

TEST(Bennett, HadamardOfIntermediateIsCircuitOutput) {
    const BennettSource src(Amplitude(0.6, 0.0), Amplitude(0.0, 0.8));
    EXPECT_LE(max_abs_diff(apply(hadamard(1), {bennett::Ap}, intermediate_phi1(src)), bennett_circuit(src)), 1e-15);
}

TEST(Bennett, BasisInputOutput) {
    const auto out = bennett_circuit(BennettSource(1.0, 0.0));
    for (const char *bits : {"000", "011", "100", "111"}) EXPECT_NEAR(out.amp(bits).real(), 0.5, 1e-15);
    EXPECT_EQ(out.nonzero_count(), 4U);
}

TEST(Bennett, BlocksAndRecoveryForRandomSources) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto [a, b] = oracle::random_pair(rng);
        for (const auto &c : check_bennett(BennettSource(a, b))) {
            ASSERT_LE(c.coeff_error, 1e-12) << c.alice;
            ASSERT_NEAR(c.fidelity, 1.0, 1e-9) << c.alice;
        }
    }
}

TEST(Bennett, PhaseFlipBlock) {
    // Alice reads 10: Bob holds a|0> - b|1>, and Z restores it.
    const BennettSource src(0.6, 0.8);
    const auto proj = project(PureState::basis({bennett::Ap, bennett::A}, "10"), {bennett::Ap, bennett::A},
                              bennett_circuit(src));
    EXPECT_NEAR(proj.residual.amp("1").real(), -0.4, 1e-15);
    const auto fixed = apply(ops::Z(), {bennett::B}, proj.residual.normalized());
    EXPECT_TRUE(equal_up_to_phase(fixed, src.ket({bennett::B}), 1e-12));
    EXPECT_NEAR(fixed.amp("1").real(), 0.8, 1e-12);
}

TEST(Bennett, RejectsUnnormalized) { EXPECT_THROW(BennettSource(1.0, 1.0), PreconditionError); }

TEST(Erratum, CorrectedPsi2Amplitudes) {
    const Amplitude alpha(0.6, 0.0), beta(0.0, 0.8);
    const auto s = corrected_psi2(alpha, beta);
    const double k = 1.0 / (2.0 * std::sqrt(2.0));
    EXPECT_NEAR(std::abs(s.amp("000000") - alpha * k), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amp("100000") + alpha * k), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amp("011100") + beta * k), 0.0, 1e-15);
    EXPECT_EQ(s.nonzero_count(), 16U);
    EXPECT_NEAR(s.norm2(), 1.0, 1e-12);
}

TEST(Erratum, HadamardIsItsOwnInverseOnPsi2) {
    const Amplitude alpha(0.28, 0.96), beta(0.0, 0.0);
    const auto back = apply(hadamard(2), {"q0", "q1"}, corrected_psi2(alpha, beta));
    EXPECT_LE(max_abs_diff(back, pre_hadamard_psi(alpha, beta)), 1e-15);
}

TEST(Erratum, AllChecksPass) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const auto [a, b] = oracle::random_pair(rng);
        const auto checks = erratum_check(a, b);
        ASSERT_EQ(checks.size(), 3U);
        for (const auto &c : checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
    }
}
