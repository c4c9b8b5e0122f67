#pragma once

// Dense complex kernel for small labeled qubit registers (at most a few
// dozen amplitudes). Big-endian indexing: the leftmost label is the most
// significant bit of the basis index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qdtele {

using Amplitude = std::complex<double>;

inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kPipelineTol = 1e-9;

/// Raised when a call violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Name of one qubit within a register. Dot sites use "P", "P'", ... and
/// generic registers use "q0", "q1", ...
class QubitLabel {
  public:
    QubitLabel() = default;
    QubitLabel(std::string name) : name_(std::move(name)) {}
    QubitLabel(const char *name) : name_(name) {}
    static QubitLabel indexed(std::size_t i) { return QubitLabel("q" + std::to_string(i)); }

    const std::string &name() const { return name_; }
    auto operator<=>(const QubitLabel &) const = default;

  private:
    std::string name_;
};

using Labels = std::vector<QubitLabel>;

namespace detail {

inline void require(bool cond, const std::string &msg) {
    if (!cond) throw PreconditionError(msg);
}

inline std::size_t position_of(const Labels &labels, const QubitLabel &l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    require(it != labels.end(), "unknown qubit label '" + l.name() + "'");
    return static_cast<std::size_t>(it - labels.begin());
}

inline void require_unique(const Labels &labels) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            require(labels[i] != labels[j], "duplicate qubit label '" + labels[i].name() + "'");
}

inline void require_finite(std::span<const Amplitude> amps) {
    for (const auto &a : amps)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::domain_error("non-finite amplitude");
}

// Bit of qubit `pos` (0 = leftmost) in an n-qubit big-endian index.
inline std::size_t bit_at(std::size_t index, std::size_t pos, std::size_t n) {
    return (index >> (n - 1 - pos)) & 1U;
}

// Gather the bits at `positions` (in order) into a compact big-endian index.
inline std::size_t gather(std::size_t index, std::span<const std::size_t> positions, std::size_t n) {
    std::size_t out = 0;
    for (auto p : positions) out = (out << 1) | bit_at(index, p, n);
    return out;
}

// Overwrite the bits at `positions` with the big-endian bits of `sub`.
inline std::size_t scatter(std::size_t index, std::span<const std::size_t> positions,
                           std::size_t sub, std::size_t n) {
    const std::size_t k = positions.size();
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t mask = std::size_t{1} << (n - 1 - positions[j]);
        if ((sub >> (k - 1 - j)) & 1U)
            index |= mask;
        else
            index &= ~mask;
    }
    return index;
}

inline std::vector<std::size_t> positions_of(const Labels &labels, std::span<const QubitLabel> targets) {
    std::vector<std::size_t> pos;
    pos.reserve(targets.size());
    for (const auto &t : targets) pos.push_back(position_of(labels, t));
    Labels tmp(targets.begin(), targets.end());
    require_unique(tmp);
    return pos;
}

inline std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> positions) {
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < n; ++p)
        if (std::find(positions.begin(), positions.end(), p) == positions.end()) rest.push_back(p);
    return rest;
}

} // namespace detail

/// Amplitude vector over an ordered list of labeled qubits. States need not
/// be normalized: projections keep their prefactors.
class PureState {
  public:
    PureState() = default;

    PureState(Labels labels, std::vector<Amplitude> amps)
        : labels_(std::move(labels)), amps_(std::move(amps)) {
        detail::require_unique(labels_);
        detail::require(amps_.size() == (std::size_t{1} << labels_.size()),
                        "amplitude count must be 2^(number of labels)");
        detail::require_finite(amps_);
    }

    /// Computational basis state from a bit string such as "0110".
    static PureState basis(Labels labels, std::string_view bits) {
        detail::require(bits.size() == labels.size(), "bit string length must match label count");
        std::size_t idx = 0;
        for (char c : bits) {
            detail::require(c == '0' || c == '1', "bit string must contain only 0 and 1");
            idx = (idx << 1) | static_cast<std::size_t>(c == '1');
        }
        std::vector<Amplitude> amps(std::size_t{1} << labels.size());
        amps[idx] = 1.0;
        return PureState(std::move(labels), std::move(amps));
    }

    /// Sum of weighted basis kets, e.g. {{"0001", 0.5}, {"0100", 0.5}}.
    static PureState from_terms(Labels labels,
                                std::initializer_list<std::pair<std::string_view, Amplitude>> terms) {
        PureState s(labels, std::vector<Amplitude>(std::size_t{1} << labels.size()));
        for (const auto &[bits, c] : terms) s += basis(labels, bits) * c;
        return s;
    }

    const Labels &labels() const { return labels_; }
    std::span<const Amplitude> amps() const { return amps_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amps_.size(); }

    Amplitude amp(std::size_t index) const { return amps_.at(index); }
    Amplitude amp(std::string_view bits) const {
        detail::require(bits.size() == labels_.size(), "bit string length must match label count");
        std::size_t idx = 0;
        for (char c : bits) idx = (idx << 1) | static_cast<std::size_t>(c == '1');
        return amps_[idx];
    }

    double norm2() const {
        double s = 0.0;
        for (const auto &a : amps_) s += std::norm(a);
        return s;
    }
    bool is_normalized(double tol = kIdentityTol) const { return std::abs(norm2() - 1.0) <= tol; }

    PureState normalized() const {
        const double n2 = norm2();
        detail::require(n2 > 0.0, "cannot normalize the zero vector");
        return *this * (1.0 / std::sqrt(n2));
    }

    /// Same amplitudes under new names (e.g. moving |xi> from (P,P') to (R,R')).
    PureState relabeled(Labels labels) const {
        detail::require(labels.size() == labels_.size(), "relabel must keep the qubit count");
        return PureState(std::move(labels), amps_);
    }

    std::size_t nonzero_count(double tol = kIdentityTol) const {
        return static_cast<std::size_t>(
            std::count_if(amps_.begin(), amps_.end(), [tol](Amplitude a) { return std::abs(a) > tol; }));
    }

    PureState &operator+=(const PureState &o) {
        detail::require(o.labels_ == labels_, "label mismatch in state addition");
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
        return *this;
    }
    friend PureState operator+(PureState a, const PureState &b) { return a += b; }
    friend PureState operator*(PureState s, Amplitude c) {
        for (auto &a : s.amps_) a *= c;
        return s;
    }
    friend PureState operator*(Amplitude c, PureState s) { return std::move(s) * c; }

  private:
    Labels labels_;
    std::vector<Amplitude> amps_;
};

/// Square matrix acting on `arity` qubits, row-major.
class Operator {
  public:
    Operator() = default;
    Operator(std::string name, std::size_t arity, std::vector<Amplitude> entries)
        : name_(std::move(name)), arity_(arity), entries_(std::move(entries)) {
        detail::require(arity_ > 0, "operator arity must be positive");
        detail::require(entries_.size() == dim() * dim(), "operator needs 4^arity entries");
        detail::require_finite(entries_);
    }

    const std::string &name() const { return name_; }
    std::size_t arity() const { return arity_; }
    std::size_t dim() const { return std::size_t{1} << arity_; }
    Amplitude operator()(std::size_t r, std::size_t c) const { return entries_[r * dim() + c]; }
    std::span<const Amplitude> entries() const { return entries_; }

    Operator adjoint() const {
        std::vector<Amplitude> e(entries_.size());
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c) e[c * dim() + r] = std::conj((*this)(r, c));
        return Operator(name_ + "^dag", arity_, std::move(e));
    }

    Operator scaled(Amplitude c, std::string name) const {
        auto e = entries_;
        for (auto &x : e) x *= c;
        return Operator(std::move(name), arity_, std::move(e));
    }

    friend Operator operator*(const Operator &a, const Operator &b) {
        detail::require(a.arity_ == b.arity_, "operator arity mismatch in product");
        const std::size_t d = a.dim();
        std::vector<Amplitude> e(d * d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t c = 0; c < d; ++c) e[r * d + c] += a(r, k) * b(k, c);
        return Operator(a.name_ + "*" + b.name_, a.arity_, std::move(e));
    }

    /// Kronecker product; the left factor acts on the more significant qubits.
    friend Operator kron(const Operator &a, const Operator &b) {
        const std::size_t da = a.dim(), db = b.dim(), d = da * db;
        std::vector<Amplitude> e(d * d);
        for (std::size_t r1 = 0; r1 < da; ++r1)
            for (std::size_t c1 = 0; c1 < da; ++c1)
                for (std::size_t r2 = 0; r2 < db; ++r2)
                    for (std::size_t c2 = 0; c2 < db; ++c2)
                        e[(r1 * db + r2) * d + (c1 * db + c2)] = a(r1, c1) * b(r2, c2);
        return Operator(a.name_ + "(x)" + b.name_, a.arity_ + b.arity_, std::move(e));
    }

    double max_abs_diff(const Operator &o) const {
        detail::require(o.arity_ == arity_, "operator arity mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i) m = std::max(m, std::abs(entries_[i] - o.entries_[i]));
        return m;
    }

    static Operator identity(std::size_t arity) {
        const std::size_t d = std::size_t{1} << arity;
        std::vector<Amplitude> e(d * d);
        for (std::size_t i = 0; i < d; ++i) e[i * d + i] = 1.0;
        return Operator("I", arity, std::move(e));
    }

    bool is_unitary(double tol = kIdentityTol) const {
        return (adjoint() * *this).max_abs_diff(identity(arity_)) <= tol;
    }

  private:
    std::string name_;
    std::size_t arity_ = 0;
    std::vector<Amplitude> entries_;
};

/// Hermitian matrix over labeled qubits.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    DensityMatrix(Labels labels, std::vector<Amplitude> entries)
        : labels_(std::move(labels)), entries_(std::move(entries)) {
        detail::require_unique(labels_);
        detail::require(entries_.size() == dim() * dim(), "density matrix needs 4^n entries");
        detail::require_finite(entries_);
    }

    static DensityMatrix maximally_mixed(Labels labels) {
        const std::size_t d = std::size_t{1} << labels.size();
        std::vector<Amplitude> e(d * d);
        for (std::size_t i = 0; i < d; ++i) e[i * d + i] = 1.0 / static_cast<double>(d);
        return DensityMatrix(std::move(labels), std::move(e));
    }

    const Labels &labels() const { return labels_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return std::size_t{1} << labels_.size(); }
    Amplitude operator()(std::size_t r, std::size_t c) const { return entries_[r * dim() + c]; }
    std::span<const Amplitude> entries() const { return entries_; }

    Amplitude trace() const {
        Amplitude t = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i);
        return t;
    }

    double hermiticity_defect() const {
        double m = 0.0;
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

    /// Ascending eigenvalues of the Hermitian part.
    std::vector<double> eigenvalues() const {
        const auto d = static_cast<Eigen::Index>(dim());
        Eigen::MatrixXcd m(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c)
                m(r, c) = (*this)(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        const auto &ev = solver.eigenvalues();
        return {ev.data(), ev.data() + ev.size()};
    }

    bool is_physical(double tol = kIdentityTol, double psd_tol = 1e-10) const {
        if (hermiticity_defect() > tol) return false;
        if (std::abs(trace() - 1.0) > tol) return false;
        const auto ev = eigenvalues();
        return ev.empty() || ev.front() >= -psd_tol;
    }

    double max_abs_diff(const DensityMatrix &o) const {
        detail::require(o.labels_ == labels_, "label mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i) m = std::max(m, std::abs(entries_[i] - o.entries_[i]));
        return m;
    }

    friend DensityMatrix mix(double w, const DensityMatrix &a, const DensityMatrix &b) {
        detail::require(a.labels_ == b.labels_, "label mismatch in mixture");
        std::vector<Amplitude> e(a.entries_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = w * a.entries_[i] + (1.0 - w) * b.entries_[i];
        return DensityMatrix(a.labels_, std::move(e));
    }

  private:
    Labels labels_;
    std::vector<Amplitude> entries_;
};

/// |a> (x) |b>; labels concatenate.
inline PureState tensor(const PureState &a, const PureState &b) {
    Labels labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    detail::require_unique(labels);
    std::vector<Amplitude> amps;
    amps.reserve(a.dim() * b.dim());
    for (auto x : a.amps())
        for (auto y : b.amps()) amps.push_back(x * y);
    return PureState(std::move(labels), std::move(amps));
}

/// Apply `op` to the qubits named in `targets` (in that order), identity
/// on the rest.
inline PureState apply(const Operator &op, std::span<const QubitLabel> targets, const PureState &s) {
    detail::require(op.arity() == targets.size(), "operator arity does not match target count");
    const auto pos = detail::positions_of(s.labels(), targets);
    const std::size_t n = s.num_qubits(), d = op.dim();
    std::vector<Amplitude> out(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Amplitude a = s.amp(i);
        if (a == Amplitude{}) continue;
        const std::size_t col = detail::gather(i, pos, n);
        for (std::size_t row = 0; row < d; ++row) {
            const Amplitude m = op(row, col);
            if (m != Amplitude{}) out[detail::scatter(i, pos, row, n)] += m * a;
        }
    }
    return PureState(s.labels(), std::move(out));
}

inline PureState apply(const Operator &op, std::initializer_list<QubitLabel> targets, const PureState &s) {
    return apply(op, std::span<const QubitLabel>(targets.begin(), targets.size()), s);
}

/// <a|b>, labels must agree.
inline Amplitude inner(const PureState &a, const PureState &b) {
    detail::require(a.labels() == b.labels(), "label mismatch in inner product");
    Amplitude s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp(i)) * b.amp(i);
    return s;
}

struct Projection {
    PureState residual; ///< unnormalized contraction
    double prob;        ///< residual norm^2 relative to the input norm^2
};

/// Contract `bra` (given as a ket on the target qubits) into `s`. The
/// residual keeps the remaining labels in their original order.
inline Projection project(const PureState &bra, std::span<const QubitLabel> targets, const PureState &s) {
    detail::require(bra.num_qubits() == targets.size(), "bra must be defined on exactly the target qubits");
    detail::require(bra.is_normalized(), "bra must be normalized");
    const auto pos = detail::positions_of(s.labels(), targets);
    const std::size_t n = s.num_qubits();
    const auto rest = detail::complement(n, pos);

    Labels rest_labels;
    for (auto p : rest) rest_labels.push_back(s.labels()[p]);
    std::vector<Amplitude> out(std::size_t{1} << rest.size());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Amplitude a = s.amp(i);
        if (a == Amplitude{}) continue;
        out[detail::gather(i, rest, n)] += std::conj(bra.amp(detail::gather(i, pos, n))) * a;
    }
    PureState residual(std::move(rest_labels), std::move(out));
    const double total = s.norm2();
    const double prob = total > 0.0 ? residual.norm2() / total : 0.0;
    return {std::move(residual), prob};
}

inline Projection project(const PureState &bra, std::initializer_list<QubitLabel> targets, const PureState &s) {
    return project(bra, std::span<const QubitLabel>(targets.begin(), targets.size()), s);
}

/// True iff |<a|b>| >= 1 - tol for normalized states on the same labels.
inline bool equal_up_to_phase(const PureState &a, const PureState &b, double tol = kPipelineTol) {
    detail::require(a.labels() == b.labels(), "label mismatch");
    detail::require(a.is_normalized(1e-9) && b.is_normalized(1e-9), "states must be normalized");
    return std::abs(inner(a, b)) >= 1.0 - tol;
}

/// Largest amplitude difference; use for coefficient-exact comparisons.
inline double max_abs_diff(const PureState &a, const PureState &b) {
    detail::require(a.labels() == b.labels(), "label mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a.amp(i) - b.amp(i)));
    return m;
}

inline DensityMatrix to_density(const PureState &s) {
    const std::size_t d = s.dim();
    std::vector<Amplitude> e(d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) e[r * d + c] = s.amp(r) * std::conj(s.amp(c));
    return DensityMatrix(s.labels(), std::move(e));
}

/// <target|rho|target>.
inline double fidelity(const DensityMatrix &rho, const PureState &target) {
    detail::require(rho.labels() == target.labels(), "label mismatch");
    detail::require(target.is_normalized(1e-9), "fidelity target must be normalized");
    Amplitude f = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) f += std::conj(target.amp(r)) * rho(r, c) * target.amp(c);
    return std::clamp(f.real(), 0.0, 1.0);
}

/// Trace out the qubits in `discard`; the kept qubits stay in order.
inline DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const QubitLabel> discard) {
    const auto drop = detail::positions_of(rho.labels(), discard);
    const std::size_t n = rho.num_qubits();
    const auto keep = detail::complement(n, drop);
    Labels kept;
    for (auto p : keep) kept.push_back(rho.labels()[p]);
    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t dd = std::size_t{1} << drop.size();
    std::vector<Amplitude> e(dk * dk);
    for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c) {
            Amplitude acc = 0.0;
            for (std::size_t t = 0; t < dd; ++t) {
                const std::size_t ri = detail::scatter(detail::scatter(0, keep, r, n), drop, t, n);
                const std::size_t ci = detail::scatter(detail::scatter(0, keep, c, n), drop, t, n);
                acc += rho(ri, ci);
            }
            e[r * dk + c] = acc;
        }
    return DensityMatrix(std::move(kept), std::move(e));
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<QubitLabel> discard) {
    return partial_trace(rho, std::span<const QubitLabel>(discard.begin(), discard.size()));
}

/// rho_a (x) rho_b.
inline DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    Labels labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    const std::size_t da = a.dim(), db = b.dim(), d = da * db;
    std::vector<Amplitude> e(d * d);
    for (std::size_t r1 = 0; r1 < da; ++r1)
        for (std::size_t c1 = 0; c1 < da; ++c1)
            for (std::size_t r2 = 0; r2 < db; ++r2)
                for (std::size_t c2 = 0; c2 < db; ++c2)
                    e[(r1 * db + r2) * d + (c1 * db + c2)] = a(r1, c1) * b(r2, c2);
    return DensityMatrix(std::move(labels), std::move(e));
}

/// Reorder the qubits of `rho` to match `order` (a permutation of its labels).
inline DensityMatrix permuted(const DensityMatrix &rho, const Labels &order) {
    detail::require(order.size() == rho.num_qubits(), "permutation must name every qubit");
    const auto pos = detail::positions_of(rho.labels(), order);
    const std::size_t n = rho.num_qubits(), d = rho.dim();
    std::vector<Amplitude> e(d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            e[detail::gather(r, pos, n) * d + detail::gather(c, pos, n)] = rho(r, c);
    return DensityMatrix(order, std::move(e));
}

} // namespace qdtele
