#include <gtest/gtest.h>

#include "qdtele/gates.hpp"

using namespace qdtele;

TEST(Hadamard, SingleQubitOnZero) {
    const auto out = apply(hadamard(1), {"q0"}, PureState::basis({"q0"}, "0"));
    EXPECT_NEAR(out.amp("0").real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(out.amp("1").real(), kInvSqrt2, 1e-15);
}

TEST(Hadamard, TwoQubitMatrixIsKronecker) {
    EXPECT_LE(hadamard(2).max_abs_diff(kron(hadamard(1), hadamard(1))), kIdentityTol);
    EXPECT_NEAR(hadamard(2)(1, 1).real(), -0.5, 0.0);
    EXPECT_NEAR(hadamard(2)(3, 3).real(), 0.5, 0.0);
}

TEST(Hadamard, TwoQubitActionOnBasisKets) {
    const Amplitude alpha{0.3, -0.4}, beta{0.1, 0.2};
    const Labels l{"q0", "q1"};
    const auto a = apply(hadamard(2), {"q0", "q1"}, PureState::basis(l, "10") * alpha);
    EXPECT_EQ(a.amp("00"), alpha / 2.0);
    EXPECT_EQ(a.amp("01"), alpha / 2.0);
    EXPECT_EQ(a.amp("10"), -alpha / 2.0);
    EXPECT_EQ(a.amp("11"), -alpha / 2.0);
    const auto b = apply(hadamard(2), {"q0", "q1"}, PureState::basis(l, "01") * beta);
    EXPECT_EQ(b.amp("00"), beta / 2.0);
    EXPECT_EQ(b.amp("01"), -beta / 2.0);
    EXPECT_EQ(b.amp("10"), beta / 2.0);
    EXPECT_EQ(b.amp("11"), -beta / 2.0);
}

TEST(Hadamard, RejectsUnsupportedSizes) {
    EXPECT_THROW(hadamard(0), PreconditionError);
    EXPECT_THROW(hadamard(-1), PreconditionError);
    EXPECT_THROW(hadamard(3), PreconditionError);
}

TEST(Cnot, BasisAction) {
    const Labels l{"c", "t"};
    EXPECT_EQ(apply(cnot(), {"c", "t"}, PureState::basis(l, "00")).amp("00"), Amplitude(1));
    EXPECT_EQ(apply(cnot(), {"c", "t"}, PureState::basis(l, "10")).amp("11"), Amplitude(1));
    EXPECT_EQ(apply(cnot(), {"c", "t"}, PureState::basis(l, "11")).amp("10"), Amplitude(1));
}

TEST(Bell, DefinitionsUnderUpIsZero) {
    const auto phi = bell_state(BellOutcome::PhiPlus);
    EXPECT_NEAR(phi.amp("00").real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(phi.amp("11").real(), kInvSqrt2, 1e-15);
    const auto psim = bell_state(BellOutcome::PsiMinus);
    EXPECT_NEAR(psim.amp("01").real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(psim.amp("10").real(), -kInvSqrt2, 1e-15);
}

TEST(Bell, OrthonormalAndComplete) {
    for (auto a : kBellOutcomes) {
        EXPECT_TRUE(bell_state(a).is_normalized());
        for (auto b : kBellOutcomes)
            EXPECT_NEAR(std::abs(inner(bell_state(a), bell_state(b))), a == b ? 1.0 : 0.0, 1e-15);
    }
    // sum_o |o><o| = I
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            Amplitude s = 0;
            for (auto o : kBellOutcomes) s += bell_state(o).amp(r) * std::conj(bell_state(o).amp(c));
            EXPECT_NEAR(std::abs(s - Amplitude(r == c ? 1.0 : 0.0)), 0.0, 1e-15);
        }
}

TEST(BellKet, MatchesNamedStates) {
    // 00 -> Phi+, 01 -> Psi+, 10 -> Phi-, 11 -> Psi-
    const std::pair<std::pair<int, int>, BellOutcome> table[] = {{{0, 0}, BellOutcome::PhiPlus},
                                                                 {{0, 1}, BellOutcome::PsiPlus},
                                                                 {{1, 0}, BellOutcome::PhiMinus},
                                                                 {{1, 1}, BellOutcome::PsiMinus}};
    for (const auto &[xy, o] : table)
        EXPECT_LE(max_abs_diff(bell_ket(xy.first, xy.second), bell_state(o)), 1e-15);
}

TEST(BellKet, RejectsMultiBitIndices) {
    EXPECT_THROW(bell_ket("10", "11"), PreconditionError);
    EXPECT_THROW(bell_ket(2, 0), PreconditionError);
    EXPECT_THROW(bell_ket(0, -1), PreconditionError);
    EXPECT_THROW(bell_ket("x", "0"), PreconditionError);
    EXPECT_NO_THROW(bell_ket("1", "0"));
}

TEST(Alphabet, YPrimeAction) {
    const Labels l{"q"};
    const auto dn = PureState::basis(l, "1"), up = PureState::basis(l, "0");
    EXPECT_LE(max_abs_diff(apply(ops::Yp(), {"q"}, dn), up), 0.0);
    EXPECT_LE(max_abs_diff(apply(ops::Yp(), {"q"}, up), dn * -1.0), 0.0);
}

TEST(Alphabet, AllUnitary) {
    for (const auto &[name, op] : table1_alphabet()) EXPECT_TRUE(op.is_unitary()) << name;
    for (const auto &op : search_alphabet()) EXPECT_TRUE(op.is_unitary()) << op.name();
    EXPECT_TRUE(hadamard(1).is_unitary());
    EXPECT_TRUE(hadamard(2).is_unitary());
    EXPECT_TRUE(cnot().is_unitary());
}

TEST(Alphabet, AlgebraicRelations) {
    const auto I = Operator::identity(1);
    EXPECT_EQ((ops::Z() * ops::X()).max_abs_diff((ops::X() * ops::Z()).scaled(-1.0, "")), 0.0);
    EXPECT_LE((hadamard(1) * hadamard(1)).max_abs_diff(I), 1e-15);
    EXPECT_EQ((ops::X() * ops::X()).max_abs_diff(I), 0.0);
    EXPECT_EQ((ops::Z() * ops::Z()).max_abs_diff(I), 0.0);
    EXPECT_EQ((ops::Yp() * ops::Yp()).max_abs_diff(I.scaled(-1.0, "-I")), 0.0);
    EXPECT_EQ(ops::negYp().max_abs_diff(ops::Yp().scaled(-1.0, "")), 0.0);
}
