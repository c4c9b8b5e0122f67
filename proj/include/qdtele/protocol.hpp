#pragma once

// Six-qubit dual-rail teleportation: the source lives on the dot pair
// (P,P'), the channel on (Q,Q',R,R'). Alice projects (P,Q) and then
// (P',Q') onto Bell states; Bob corrects (R,R') with a product operator.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdtele/gates.hpp"
#include "qdtele/qcore.hpp"

namespace qdtele {

namespace site {
inline const QubitLabel P{"P"}, Pp{"P'"}, Q{"Q"}, Qp{"Q'"}, R{"R"}, Rp{"R'"};
} // namespace site

inline Labels source_labels() { return {site::P, site::Pp}; }
inline Labels channel_labels() { return {site::Q, site::Qp, site::R, site::Rp}; }
inline Labels bob_labels() { return {site::R, site::Rp}; }
inline Labels register_labels() { return {site::P, site::Pp, site::Q, site::Qp, site::R, site::Rp}; }

/// alpha|dn up> + beta|up dn>, with |alpha|^2 + |beta|^2 = 1.
class SourceQubit {
  public:
    SourceQubit(Amplitude alpha, Amplitude beta) : alpha_(alpha), beta_(beta) {
        detail::require(std::isfinite(std::norm(alpha)) && std::isfinite(std::norm(beta)),
                        "source amplitudes must be finite");
        detail::require(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= kIdentityTol,
                        "source amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
    }

    /// Rescale (alpha, beta) to unit norm. Zero input is rejected.
    static SourceQubit normalized(Amplitude alpha, Amplitude beta) {
        const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
        detail::require(n > 0.0 && std::isfinite(n), "source amplitudes must not both vanish");
        return {alpha / n, beta / n};
    }

    /// Uniform on the Bloch sphere.
    template <class Rng> static SourceQubit random(Rng &rng) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double theta = std::acos(1.0 - 2.0 * u(rng));
        const double phi = 2.0 * std::numbers::pi * u(rng);
        const Amplitude a = std::cos(theta / 2.0);
        const Amplitude b = std::polar(std::sin(theta / 2.0), phi);
        return normalized(a, b);
    }

    Amplitude alpha() const { return alpha_; }
    Amplitude beta() const { return beta_; }

  private:
    Amplitude alpha_;
    Amplitude beta_;
};

struct MeasurementRecord {
    BellOutcome pq;   ///< outcome on (P,Q)
    BellOutcome ppqq; ///< outcome on (P',Q')
    auto operator<=>(const MeasurementRecord &) const = default;

    /// 0..15, (P,Q) outcome major.
    std::size_t index() const { return static_cast<std::size_t>(pq) * 4 + static_cast<std::size_t>(ppqq); }
    static MeasurementRecord from_index(std::size_t i) {
        return {kBellOutcomes.at(i / 4), kBellOutcomes.at(i % 4)};
    }
};

inline std::array<MeasurementRecord, 16> all_records() {
    std::array<MeasurementRecord, 16> out{};
    for (std::size_t i = 0; i < 16; ++i) out[i] = MeasurementRecord::from_index(i);
    return out;
}

/// Source encoded on (P,P') (or on `labels`, e.g. (R,R') for comparison).
inline PureState encode_source(const SourceQubit &src, Labels labels = source_labels()) {
    return PureState::from_terms(std::move(labels), {{"10", src.alpha()}, {"01", src.beta()}});
}

/// Entangled channel on (Q,Q',R,R') in the occupation basis.
inline PureState channel_state() {
    return PureState::from_terms(channel_labels(), {{"0001", 0.5}, {"0100", 0.5}, {"1011", 0.5}, {"1110", 0.5}});
}

inline PureState combined_state(const SourceQubit &src) { return tensor(encode_source(src), channel_state()); }

/// Bell projection on (P,Q) alone, leaving (P',Q',R,R').
inline Projection measure_first(BellOutcome pq, const PureState &combined) {
    return project(bell_state(pq, {site::P, site::Q}), {site::P, site::Q}, combined);
}

struct Branch {
    MeasurementRecord record;
    PureState residual; ///< on (R,R'), carries the 1/4 prefactor
    double prob;
};

/// All 16 outcome pairs, (P,Q) projected first, then (P',Q').
inline std::vector<Branch> measure_cascade(const SourceQubit &src) {
    const PureState start = combined_state(src);
    std::vector<Branch> out;
    out.reserve(16);
    for (auto rec : all_records()) {
        const auto first = measure_first(rec.pq, start);
        auto second = project(bell_state(rec.ppqq, {site::Pp, site::Qp}), {site::Pp, site::Qp}, first.residual);
        const double prob = second.residual.norm2() / start.norm2();
        out.push_back({rec, std::move(second.residual), prob});
    }
    return out;
}

/// Same cascade with the (P',Q') projection applied first.
inline std::vector<Branch> measure_cascade_reversed(const SourceQubit &src) {
    const PureState start = combined_state(src);
    std::vector<Branch> out;
    out.reserve(16);
    for (auto rec : all_records()) {
        const auto first = project(bell_state(rec.ppqq, {site::Pp, site::Qp}), {site::Pp, site::Qp}, start);
        auto second = project(bell_state(rec.pq, {site::P, site::Q}), {site::P, site::Q}, first.residual);
        const double prob = second.residual.norm2() / start.norm2();
        out.push_back({rec, std::move(second.residual), prob});
    }
    return out;
}

/// One printed row of the correction table. Alice's result is printed as
/// (P',Q' outcome)(P,Q outcome). Bob's state is
/// alpha_sign*alpha|alpha_ket> + beta_sign*beta|beta_ket> with kets in
/// up/down notation, normalization dropped.
struct Table1Row {
    BellOutcome ppqq;
    BellOutcome pq;
    int alpha_sign;
    const char *alpha_ket;
    int beta_sign;
    const char *beta_ket;
    const char *left_op; ///< acts on R
    const char *right_op; ///< acts on R'

    MeasurementRecord record() const { return {pq, ppqq}; }
};

inline const std::array<Table1Row, 16> &table1_rows() {
    using enum BellOutcome;
    static const std::array<Table1Row, 16> rows = {{
        {PhiPlus, PhiPlus, +1, "dd", +1, "uu", "I", "X"},
        {PhiPlus, PhiMinus, -1, "dd", +1, "uu", "Z", "X"},
        {PhiMinus, PhiPlus, +1, "dd", -1, "uu", "I", "Y'"},
        {PhiMinus, PhiMinus, -1, "dd", -1, "uu", "Z", "Y'"},
        {PsiPlus, PhiPlus, +1, "du", +1, "ud", "I", "I"},
        {PsiPlus, PhiMinus, -1, "du", +1, "ud", "Z", "I"},
        {PsiMinus, PhiPlus, +1, "du", -1, "ud", "I", "Z"},
        {PsiMinus, PhiMinus, -1, "du", -1, "ud", "Z", "Z"},
        {PhiPlus, PsiPlus, +1, "ud", +1, "du", "Y'", "-Y'"},
        {PhiPlus, PsiMinus, -1, "ud", +1, "du", "Y'", "X"},
        {PhiMinus, PsiPlus, +1, "ud", -1, "du", "-Y'", "X"},
        {PhiMinus, PsiMinus, -1, "ud", -1, "du", "Y'", "-Y'"},
        {PsiPlus, PsiPlus, +1, "uu", +1, "dd", "-Y'", "Z"},
        {PsiPlus, PsiMinus, -1, "uu", +1, "dd", "Y'", "I"},
        {PsiMinus, PsiPlus, +1, "uu", -1, "dd", "-Y'", "I"},
        {PsiMinus, PsiMinus, -1, "uu", -1, "dd", "Y'", "Z"},
    }};
    return rows;
}

/// "ud" -> "01" under up = 0.
inline std::string spin_to_bits(std::string_view spins) {
    std::string bits;
    for (char c : spins) bits.push_back(c == 'u' ? '0' : '1');
    return bits;
}

/// Bob's state as printed in a table row, normalization dropped.
inline PureState table1_printed_state(const Table1Row &row, const SourceQubit &src) {
    return PureState::from_terms(bob_labels(),
                                 {{spin_to_bits(row.alpha_ket), double(row.alpha_sign) * src.alpha()},
                                  {spin_to_bits(row.beta_ket), double(row.beta_sign) * src.beta()}});
}

/// Map from measurement record to (R op, R' op) names.
using CorrectionTable = std::map<MeasurementRecord, std::pair<std::string, std::string>>;

inline const CorrectionTable &correction_table() {
    static const CorrectionTable table = [] {
        CorrectionTable t;
        for (const auto &row : table1_rows()) t.emplace(row.record(), std::make_pair(row.left_op, row.right_op));
        return t;
    }();
    return table;
}

inline std::pair<Operator, Operator> correction_for(const MeasurementRecord &rec) {
    static const auto alphabet = table1_alphabet();
    const auto &[l, r] = correction_table().at(rec);
    return {alphabet.at(l), alphabet.at(r)};
}

/// Normalize a residual on (R,R') and apply left (x) right.
inline PureState apply_correction(const Operator &left, const Operator &right, const PureState &residual) {
    const auto n = residual.normalized();
    return apply(right, {site::Rp}, apply(left, {site::R}, n));
}

struct BranchReport {
    MeasurementRecord record;
    double prob;
    PureState residual;  ///< pre-correction, unnormalized
    PureState corrected; ///< normalized, after Bob's operator
    std::string left_op;
    std::string right_op;
    double fidelity;     ///< |<xi|corrected>|^2
    bool pass;
};

struct TeleportReport {
    SourceQubit src;
    std::vector<BranchReport> branches;
    bool all_pass;
};

inline TeleportReport teleport_exact(const SourceQubit &src) {
    const PureState target = encode_source(src, bob_labels());
    TeleportReport report{src, {}, true};
    for (auto &b : measure_cascade(src)) {
        const auto [left, right] = correction_for(b.record);
        PureState out = apply_correction(left, right, b.residual);
        const double f = std::norm(inner(target, out));
        const bool ok = equal_up_to_phase(target, out, kPipelineTol);
        report.all_pass = report.all_pass && ok;
        report.branches.push_back({b.record, b.prob, std::move(b.residual), std::move(out), left.name(),
                                   right.name(), f, ok});
    }
    return report;
}

struct ShotsReport {
    std::uint64_t shots;
    std::uint64_t seed;
    std::array<std::uint64_t, 16> histogram{}; ///< indexed by MeasurementRecord::index()
    double mean_fidelity;
};

/// Sample outcome records by their exact probabilities and average the
/// post-correction fidelity. Deterministic for a fixed seed.
inline ShotsReport teleport_shots(const SourceQubit &src, std::uint64_t shots, std::uint64_t seed) {
    detail::require(shots >= 1, "shots must be at least 1");
    const auto exact = teleport_exact(src);
    std::vector<double> weights;
    for (const auto &b : exact.branches) weights.push_back(b.prob);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

    ShotsReport r{shots, seed, {}, 0.0};
    double fsum = 0.0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const auto &b = exact.branches[pick(rng)];
        ++r.histogram[b.record.index()];
        fsum += b.fidelity;
    }
    r.mean_fidelity = fsum / static_cast<double>(shots);
    return r;
}

/// All (left, right) pairs from the phase-distinct alphabet that recover
/// the source from a residual up to global phase.
inline std::vector<std::pair<std::string, std::string>> recovering_pairs(const PureState &residual,
                                                                         const SourceQubit &src) {
    const PureState target = encode_source(src, bob_labels());
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &l : search_alphabet())
        for (const auto &r : search_alphabet())
            if (equal_up_to_phase(target, apply_correction(l, r, residual))) out.emplace_back(l.name(), r.name());
    return out;
}

/// Drop a leading minus: "-Y'" and "Y'" differ only by a global phase.
inline std::string phase_canonical(std::string_view name) {
    return std::string(!name.empty() && name.front() == '-' ? name.substr(1) : name);
}

/// Human-readable ket expansion in up/down notation, e.g. "0.6|↓↓⟩ + 0.8|↑↑⟩".
inline std::string format_spin_state(const PureState &s, double tol = 1e-12) {
    auto num = [](double x) {
        std::ostringstream os;
        os.precision(12);
        os << x;
        return os.str();
    };
    std::string out;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Amplitude a = s.amp(i);
        if (std::abs(a) <= tol) continue;
        std::string ket = "|";
        for (std::size_t q = 0; q < s.num_qubits(); ++q)
            ket += detail::bit_at(i, q, s.num_qubits()) ? "↓" : "↑";
        ket += "⟩";
        std::string coef;
        if (std::abs(a.imag()) <= tol) {
            const double re = a.real();
            if (std::abs(re - 1.0) <= tol)
                coef = out.empty() ? "" : "+ ";
            else if (std::abs(re + 1.0) <= tol)
                coef = out.empty() ? "-" : "- ";
            else if (re < 0)
                coef = (out.empty() ? "-" : "- ") + num(-re);
            else
                coef = (out.empty() ? "" : "+ ") + num(re);
        } else {
            coef = (out.empty() ? "(" : "+ (") + num(a.real()) + (a.imag() < 0 ? "-" : "+") +
                   num(std::abs(a.imag())) + "i)";
        }
        if (!out.empty()) out += " ";
        out += coef + ket;
    }
    return out.empty() ? "0" : out;
}

} // namespace qdtele
