#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qdtele/gates.hpp"
#include "qdtele/protocol.hpp"
#include "qdtele/qcore.hpp"

using namespace qdtele;

namespace {

PureState random_state(const Labels &labels, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> amps(std::size_t{1} << labels.size());
    for (auto &a : amps) a = {g(rng), g(rng)};
    return PureState(labels, amps).normalized();
}

Operator random_unitary2(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    const double t = u(rng) / 2, a = u(rng), b = u(rng), c = u(rng);
    const Amplitude e = std::polar(1.0, c);
    return Operator("U", 1,
                    {e * std::polar(std::cos(t), a), e * std::polar(std::sin(t), b),
                     -e * std::polar(std::sin(t), -b), e * std::polar(std::cos(t), -a)});
}

} // namespace

TEST(Tensor, BasisOuterProduct) {
    const auto s = tensor(PureState::basis({"a"}, "0"), PureState::basis({"b"}, "1"));
    EXPECT_EQ(s.labels(), (Labels{"a", "b"}));
    EXPECT_EQ(s.amp("01"), Amplitude(1.0));
    EXPECT_EQ(s.nonzero_count(), 1U);
}

TEST(Tensor, Distributes) {
    const double h = kInvSqrt2;
    const auto plus = PureState::from_terms({"a"}, {{"0", h}, {"1", h}});
    const auto s = tensor(plus, PureState::basis({"b"}, "0"));
    EXPECT_NEAR(s.amp("00").real(), h, 1e-15);
    EXPECT_NEAR(s.amp("10").real(), h, 1e-15);
    EXPECT_EQ(s.amp("01"), Amplitude(0.0));
    EXPECT_EQ(s.amp("11"), Amplitude(0.0));
}

TEST(Tensor, SourceTimesChannelHasEightTerms) {
    const auto src = SourceQubit::normalized({0.3, 0.1}, {-0.5, 0.7});
    const auto s = tensor(encode_source(src), channel_state());
    EXPECT_EQ(s.num_qubits(), 6U);
    EXPECT_EQ(s.nonzero_count(), 8U);
}

TEST(Tensor, DuplicateLabelRejected) {
    EXPECT_THROW(tensor(PureState::basis({"a"}, "0"), PureState::basis({"a"}, "1")), PreconditionError);
}

TEST(Apply, PauliFlipsNamedQubit) {
    const auto s = PureState::basis({site::R, site::Rp}, "11"); // |dn dn>
    const auto out = apply(ops::X(), {site::R}, s);
    EXPECT_EQ(out.amp("01"), Amplitude(1.0)); // |up dn>
}

TEST(Apply, IdentityLeavesStateAlone) {
    std::mt19937_64 rng(3);
    const auto s = random_state({"R", "R'"}, rng);
    const auto out = apply(kron(ops::I(), ops::I()), {"R", "R'"}, s);
    EXPECT_LE(max_abs_diff(out, s), 1e-15);
}

TEST(Apply, TargetOrderMatters) {
    // CNOT with control on the second label.
    const auto s = PureState::basis({"a", "b"}, "01");
    EXPECT_EQ(apply(cnot(), {"b", "a"}, s).amp("11"), Amplitude(1.0));
    EXPECT_EQ(apply(cnot(), {"a", "b"}, s).amp("01"), Amplitude(1.0));
}

TEST(Apply, Errors) {
    const auto s = PureState::basis({"a", "b"}, "00");
    EXPECT_THROW(apply(cnot(), {"a"}, s), PreconditionError);
    EXPECT_THROW(apply(ops::X(), {"z"}, s), PreconditionError);
    EXPECT_THROW(apply(cnot(), {"a", "a"}, s), PreconditionError);
}

TEST(Apply, UnitaryPreservesNormProperty) {
    std::mt19937_64 rng(11);
    const Labels labels{"q0", "q1", "q2", "q3"};
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_state(labels, rng) * 0.7; // unnormalized on purpose
        const double before = s.norm2();
        const auto u = random_unitary2(rng);
        ASSERT_TRUE(u.is_unitary());
        const auto out = apply(u, {labels[pick(rng)]}, s);
        ASSERT_NEAR(out.norm2(), before, 1e-12);
    }
}

TEST(Project, FullOverlapReturnsRemainder) {
    std::mt19937_64 rng(5);
    const auto psi = random_state({"R"}, rng);
    const auto s = tensor(PureState::basis({"P", "Q"}, "00"), psi);
    const auto r = project(PureState::basis({"P", "Q"}, "00"), {"P", "Q"}, s);
    EXPECT_LE(max_abs_diff(r.residual, psi), 1e-15);
    EXPECT_NEAR(r.prob, 1.0, 1e-12);
}

TEST(Project, TensorThenProjectInvertsProperty) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto b = random_state({"x", "y"}, rng);
        const auto s = random_state({"u", "v", "w"}, rng);
        const auto r = project(b, {"x", "y"}, tensor(b, s));
        ASSERT_LE(max_abs_diff(r.residual, s), 1e-12);
        ASSERT_NEAR(r.prob, 1.0, 1e-12);
    }
}

TEST(Project, BellCompletenessProperty) {
    std::mt19937_64 rng(7);
    const Labels labels{"a", "b", "c", "d"};
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_state(labels, rng);
        double total = 0;
        for (auto o : kBellOutcomes) total += project(bell_state(o, {"b", "d"}), {"b", "d"}, s).prob;
        ASSERT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Project, MatchesBruteForceContraction) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [a, b] = oracle::random_pair(rng);
        const SourceQubit src(a, b);
        for (auto rec : all_records()) {
            const auto first = measure_first(rec.pq, combined_state(src));
            const auto second =
                project(bell_state(rec.ppqq, {site::Pp, site::Qp}), {site::Pp, site::Qp}, first.residual);
            const auto want = oracle::cascade_residual(a, b, std::string(to_string(rec.pq)),
                                                       std::string(to_string(rec.ppqq)));
            for (const auto &bits : oracle::bitstrings(2))
                ASSERT_LE(std::abs(second.residual.amp(bits) - oracle::get(want, bits)), 1e-12);
        }
    }
}

TEST(Project, Errors) {
    const auto s = PureState::basis({"a", "b"}, "00");
    EXPECT_THROW(project(PureState::basis({"x"}, "0"), {"z"}, s), PreconditionError);
    EXPECT_THROW(project(PureState::basis({"x", "y"}, "00"), {"a"}, s), PreconditionError);
    EXPECT_THROW(project(PureState::basis({"x"}, "0") * 2.0, {"a"}, s), PreconditionError);
}

TEST(EqualUpToPhase, Cases) {
    std::mt19937_64 rng(9);
    const auto psi = random_state({"a", "b"}, rng);
    EXPECT_TRUE(equal_up_to_phase(psi, psi * -1.0, 1e-12));
    EXPECT_TRUE(equal_up_to_phase(psi, psi * std::polar(1.0, std::numbers::pi / 3), 1e-12));
    EXPECT_FALSE(equal_up_to_phase(PureState::basis({"a"}, "0"), PureState::basis({"a"}, "1"), 1e-12));
    EXPECT_THROW(equal_up_to_phase(psi, PureState::basis({"a", "c"}, "00")), PreconditionError);
}

TEST(Density, PureSelfFidelity) {
    std::mt19937_64 rng(10);
    const auto psi = random_state({"a", "b"}, rng);
    EXPECT_NEAR(fidelity(to_density(psi), psi), 1.0, 1e-12);
}

TEST(Density, MaximallyMixedFidelity) {
    std::mt19937_64 rng(12);
    const auto psi = random_state({"a", "b"}, rng);
    EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed({"a", "b"}), psi), 0.25, 1e-12);
}

TEST(Density, PartialTraceOfBellPairIsHalfIdentity) {
    const auto rho = to_density(bell_state(BellOutcome::PhiPlus, {"a", "b"}));
    const auto red = partial_trace(rho, {"b"});
    EXPECT_LE(red.max_abs_diff(DensityMatrix::maximally_mixed({"a"})), 1e-15);
}

TEST(Density, PartialTraceKeepsTraceAndHermiticity) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho = to_density(random_state({"a", "b", "c"}, rng));
        const auto red = partial_trace(rho, {"b"});
        ASSERT_EQ(red.labels(), (Labels{"a", "c"}));
        ASSERT_NEAR(red.trace().real(), 1.0, 1e-12);
        ASSERT_LE(red.hermiticity_defect(), 1e-12);
        ASSERT_TRUE(red.is_physical());
    }
}

TEST(Density, FidelityEqualsOverlapSquaredProperty) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_state({"a", "b"}, rng);
        const auto b = random_state({"a", "b"}, rng);
        ASSERT_NEAR(fidelity(to_density(a), b), std::norm(inner(a, b)), 1e-12);
    }
}

TEST(Density, FidelityRejectsUnnormalizedTarget) {
    const auto rho = DensityMatrix::maximally_mixed({"a"});
    EXPECT_THROW(fidelity(rho, PureState::basis({"a"}, "0") * 2.0), PreconditionError);
}

TEST(Density, PermuteRoundTrip) {
    std::mt19937_64 rng(15);
    const auto rho = to_density(random_state({"a", "b", "c"}, rng));
    const auto back = permuted(permuted(rho, {"c", "a", "b"}), {"a", "b", "c"});
    EXPECT_LE(back.max_abs_diff(rho), 0.0);
}

TEST(PureState, InvariantsEnforced) {
    EXPECT_THROW(PureState({"a"}, {1.0, 0.0, 0.0}), PreconditionError);
    EXPECT_THROW(PureState({"a", "a"}, std::vector<Amplitude>(4)), PreconditionError);
    EXPECT_THROW(PureState({"a"}, {std::nan(""), 0.0}), std::domain_error);
}
