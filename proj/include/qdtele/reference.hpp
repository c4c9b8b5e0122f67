#pragma once

// Standard three-qubit teleportation circuit and the two-qubit Hadamard
// identities used to correct a published output state.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qdtele/gates.hpp"
#include "qdtele/qcore.hpp"

namespace qdtele {

namespace bennett {
inline const QubitLabel Ap{"A'"}, A{"A"}, B{"B"};
inline Labels labels() { return {Ap, A, B}; }
} // namespace bennett

/// a|0> + b|1> on Alice's input qubit A'.
struct BennettSource {
    Amplitude a;
    Amplitude b;

    BennettSource(Amplitude a_, Amplitude b_) : a(a_), b(b_) {
        detail::require(std::abs(std::norm(a) + std::norm(b) - 1.0) <= kIdentityTol,
                        "source amplitudes must satisfy |a|^2 + |b|^2 = 1");
    }

    PureState ket(Labels labels = {bennett::Ap}) const {
        return PureState::from_terms(std::move(labels), {{"0", a}, {"1", b}});
    }
};

/// |Phi> (x) (|00> + |11>)/sqrt2 on (A', A, B).
inline PureState bennett_input(const BennettSource &src) {
    return tensor(src.ket(), bell_state(BellOutcome::PhiPlus, {bennett::A, bennett::B}));
}

/// State after the CNOT, written out term by term:
/// (1/sqrt2)[a|0>(|00>+|11>) + b|1>(|10>+|01>)].
inline PureState intermediate_phi1(const BennettSource &src) {
    const Amplitude ca = src.a * kInvSqrt2, cb = src.b * kInvSqrt2;
    return PureState::from_terms(bennett::labels(), {{"000", ca}, {"011", ca}, {"110", cb}, {"101", cb}});
}

/// CNOT(A' -> A), then H on A'.
inline PureState bennett_circuit(const BennettSource &src) {
    const auto after_cnot = apply(cnot(), {bennett::Ap, bennett::A}, bennett_input(src));
    return apply(hadamard(1), {bennett::Ap}, after_cnot);
}

/// Bob's unnormalized state for each of Alice's four results, as listed for
/// the circuit output: index = 2*bit(A') + bit(A).
inline std::vector<PureState> bennett_expected_blocks(const BennettSource &src) {
    const Labels b{bennett::B};
    return {
        PureState::from_terms(b, {{"0", 0.5 * src.a}, {"1", 0.5 * src.b}}),
        PureState::from_terms(b, {{"1", 0.5 * src.a}, {"0", 0.5 * src.b}}),
        PureState::from_terms(b, {{"0", 0.5 * src.a}, {"1", -0.5 * src.b}}),
        PureState::from_terms(b, {{"1", 0.5 * src.a}, {"0", -0.5 * src.b}}),
    };
}

/// Bob's fix-up for Alice's result (A', A): Z^m1 X^m2.
inline Operator bennett_correction(int m1, int m2) {
    Operator op = Operator::identity(1);
    if (m2) op = ops::X() * op;
    if (m1) op = ops::Z() * op;
    return op;
}

struct BennettBlockCheck {
    std::string alice;     ///< measured bits on (A', A)
    double coeff_error;    ///< max |contracted - expected| for Bob's amplitudes
    double fidelity;       ///< after Bob's Z^m1 X^m2 fix-up
    bool pass;
};

/// Contract the circuit output with each of <00|, <01|, <10|, <11| on
/// (A', A) and compare Bob's amplitudes with the expected blocks.
inline std::vector<BennettBlockCheck> check_bennett(const BennettSource &src) {
    const auto out = bennett_circuit(src);
    const auto expected = bennett_expected_blocks(src);
    const auto target = src.ket({bennett::B});
    std::vector<BennettBlockCheck> checks;
    for (int m1 = 0; m1 < 2; ++m1)
        for (int m2 = 0; m2 < 2; ++m2) {
            const std::string bits = std::to_string(m1) + std::to_string(m2);
            const auto proj = project(PureState::basis({bennett::Ap, bennett::A}, bits), {bennett::Ap, bennett::A}, out);
            const double err = max_abs_diff(proj.residual, expected[static_cast<std::size_t>(2 * m1 + m2)]);
            const auto fixed = apply(bennett_correction(m1, m2), {bennett::B}, proj.residual.normalized());
            const double f = std::norm(inner(target, fixed));
            checks.push_back({bits, err, f, err <= kIdentityTol && std::abs(f - 1.0) <= kPipelineTol});
        }
    return checks;
}

/// (alpha/2sqrt2)(|00>+|01>-|10>-|11>)(|0000>+|1111>)
///   + (beta/2sqrt2)(|00>-|01>+|10>-|11>)(|1100>+|0011>)
inline PureState corrected_psi2(Amplitude alpha, Amplitude beta) {
    const Amplitude ca = alpha / (2.0 * std::sqrt(2.0));
    const Amplitude cb = beta / (2.0 * std::sqrt(2.0));
    const Labels head{"q0", "q1"};
    const Labels tail{"q2", "q3", "q4", "q5"};
    const auto ha = PureState::from_terms(head, {{"00", 1}, {"01", 1}, {"10", -1}, {"11", -1}});
    const auto ta = PureState::from_terms(tail, {{"0000", 1}, {"1111", 1}});
    const auto hb = PureState::from_terms(head, {{"00", 1}, {"01", -1}, {"10", 1}, {"11", -1}});
    const auto tb = PureState::from_terms(tail, {{"1100", 1}, {"0011", 1}});
    return tensor(ha, ta) * ca + tensor(hb, tb) * cb;
}

/// alpha|10>(|0000>+|1111>)/sqrt2 + beta|01>(|1100>+|0011>)/sqrt2, the
/// state the two-qubit Hadamard acts on.
inline PureState pre_hadamard_psi(Amplitude alpha, Amplitude beta) {
    const Labels head{"q0", "q1"};
    const Labels tail{"q2", "q3", "q4", "q5"};
    const auto ta = PureState::from_terms(tail, {{"0000", kInvSqrt2}, {"1111", kInvSqrt2}});
    const auto tb = PureState::from_terms(tail, {{"1100", kInvSqrt2}, {"0011", kInvSqrt2}});
    return tensor(PureState::basis(head, "10"), ta) * alpha + tensor(PureState::basis(head, "01"), tb) * beta;
}

struct ErratumCheck {
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs the three corrections: Hadamard action on alpha|10> and beta|01>,
/// the corrected six-qubit output, and rejection of multi-bit Bell indices.
inline std::vector<ErratumCheck> erratum_check(Amplitude alpha = 0.6, Amplitude beta = 0.8) {
    std::vector<ErratumCheck> checks;
    const Labels two{"q0", "q1"};
    const Operator h2 = hadamard(2);

    {
        const auto got_a = apply(h2, {"q0", "q1"}, PureState::basis(two, "10") * alpha);
        const auto want_a =
            PureState::from_terms(two, {{"00", alpha / 2.0}, {"01", alpha / 2.0}, {"10", -alpha / 2.0}, {"11", -alpha / 2.0}});
        const auto got_b = apply(h2, {"q0", "q1"}, PureState::basis(two, "01") * beta);
        const auto want_b =
            PureState::from_terms(two, {{"00", beta / 2.0}, {"01", -beta / 2.0}, {"10", beta / 2.0}, {"11", -beta / 2.0}});
        const double err = std::max(max_abs_diff(got_a, want_a), max_abs_diff(got_b, want_b));
        const bool h_ok = h2.max_abs_diff(kron(hadamard(1), hadamard(1))) <= kIdentityTol;
        checks.push_back({"hadamard2_action", err <= kIdentityTol && h_ok,
                          fmt::format("max |H2 x - expected| = {:.3e}", err) +
                              (h_ok ? ", H2 == H(x)H" : ", H2 != H(x)H")});
    }
    {
        const auto pipeline = apply(h2, {"q0", "q1"}, pre_hadamard_psi(alpha, beta));
        const double err = max_abs_diff(pipeline, corrected_psi2(alpha, beta));
        checks.push_back({"corrected_psi2", err <= kIdentityTol,
                          fmt::format("max amplitude difference = {:.3e}", err)});
    }
    {
        bool rejected = false;
        std::string why;
        try {
            (void)bell_ket("10", "11");
        } catch (const PreconditionError &e) {
            rejected = true;
            why = e.what();
        }
        checks.push_back({"bell_ket_two_bit_indices_rejected", rejected,
                          rejected ? "rejected: " + why : "two-bit indices were accepted"});
    }
    return checks;
}

} // namespace qdtele
