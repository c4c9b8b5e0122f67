#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <string_view>

#include "qdtele/qcore.hpp"

namespace qdtele {

// Spin <-> bit convention used everywhere: |up> = 0, |down> = 1.

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// Hadamard on one or two qubits. hadamard(2) is H (x) H with the overall
/// factor 1/2.
inline Operator hadamard(int n) {
    detail::require(n == 1 || n == 2, "hadamard is defined for 1 or 2 qubits");
    const double h = kInvSqrt2;
    Operator h1("H", 1, {h, h, h, -h});
    if (n == 1) return h1;
    const double q = 0.5;
    return Operator("H2", 2,
                    {q, q, q, q,
                     q, -q, q, -q,
                     q, q, -q, -q,
                     q, -q, -q, q});
}

/// Control is the first qubit, target the second: |c,t> -> |c, t xor c>.
inline Operator cnot() {
    return Operator("CNOT", 2,
                    {1, 0, 0, 0,
                     0, 1, 0, 0,
                     0, 0, 0, 1,
                     0, 0, 1, 0});
}

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

inline std::string_view to_string(BellOutcome o) {
    switch (o) {
    case BellOutcome::PhiPlus: return "Phi+";
    case BellOutcome::PhiMinus: return "Phi-";
    case BellOutcome::PsiPlus: return "Psi+";
    case BellOutcome::PsiMinus: return "Psi-";
    }
    return "?";
}

inline BellOutcome bell_outcome_from_string(std::string_view s) {
    for (auto o : kBellOutcomes)
        if (to_string(o) == s) return o;
    throw PreconditionError("unknown Bell outcome '" + std::string(s) + "'");
}

/// +1 for Phi+/Psi+, -1 for Phi-/Psi-.
inline int sign_of(BellOutcome o) {
    return (o == BellOutcome::PhiPlus || o == BellOutcome::PsiPlus) ? 1 : -1;
}

inline bool is_phi(BellOutcome o) { return o == BellOutcome::PhiPlus || o == BellOutcome::PhiMinus; }

/// Phi+- = (|up up> +- |dn dn>)/sqrt2, Psi+- = (|up dn> +- |dn up>)/sqrt2.
inline PureState bell_state(BellOutcome o, Labels labels = {"q0", "q1"}) {
    const double s = sign_of(o) * kInvSqrt2;
    if (is_phi(o)) return PureState::from_terms(std::move(labels), {{"00", kInvSqrt2}, {"11", s}});
    return PureState::from_terms(std::move(labels), {{"01", kInvSqrt2}, {"10", s}});
}

/// |beta_{x,y}> = (|0,y> + (-1)^x |1,not y>)/sqrt2. Only single bits are
/// accepted; multi-bit indices have no meaning here.
inline PureState bell_ket(int x, int y, Labels labels = {"q0", "q1"}) {
    detail::require((x == 0 || x == 1) && (y == 0 || y == 1), "bell_ket indices must be single bits");
    const std::string first = "0" + std::to_string(y);
    const std::string second = "1" + std::to_string(1 - y);
    return PureState::from_terms(std::move(labels),
                                 {{first, kInvSqrt2}, {second, (x == 0 ? 1.0 : -1.0) * kInvSqrt2}});
}

/// Bit-string overload for indices read from text such as "10".
inline PureState bell_ket(std::string_view x, std::string_view y, Labels labels = {"q0", "q1"}) {
    detail::require(x.size() == 1 && y.size() == 1, "bell_ket indices must be single bits, got '" +
                                                        std::string(x) + "','" + std::string(y) + "'");
    detail::require((x[0] == '0' || x[0] == '1') && (y[0] == '0' || y[0] == '1'),
                    "bell_ket indices must be 0 or 1");
    return bell_ket(x[0] - '0', y[0] - '0', std::move(labels));
}

// Single-qubit factors of the correction table, written in the up/down basis:
//   I  = |up><up| + |dn><dn|
//   Z  = |up><up| - |dn><dn|
//   X  = |up><dn| + |dn><up|
//   Y' = |up><dn| - |dn><up|
namespace ops {
inline Operator I() { return Operator("I", 1, {1, 0, 0, 1}); }
inline Operator Z() { return Operator("Z", 1, {1, 0, 0, -1}); }
inline Operator X() { return Operator("X", 1, {0, 1, 1, 0}); }
inline Operator Yp() { return Operator("Y'", 1, {0, 1, -1, 0}); }
inline Operator negYp() { return Operator("-Y'", 1, {0, -1, 1, 0}); }
} // namespace ops

/// Name -> operator for every factor that appears in the correction table.
inline std::map<std::string, Operator> table1_alphabet() {
    return {{"I", ops::I()}, {"Z", ops::Z()}, {"X", ops::X()}, {"Y'", ops::Yp()}, {"-Y'", ops::negYp()}};
}

/// The four phase-distinct members used for exhaustive correction search.
inline std::array<Operator, 4> search_alphabet() { return {ops::I(), ops::Z(), ops::X(), ops::Yp()}; }

} // namespace qdtele
