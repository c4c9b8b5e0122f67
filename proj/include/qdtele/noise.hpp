#pragma once

// Depolarizing noise E(rho) = p I/d + (1-p) rho on a subset of qubits, and
// the resulting teleportation fidelity when it acts on Bob's corrected pair.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qdtele/protocol.hpp"
#include "qdtele/qcore.hpp"

namespace qdtele {

struct NoiseSpec {
    double p = 0.0;
    Labels target = bob_labels();

    std::size_t dim() const { return std::size_t{1} << target.size(); }

    void validate() const {
        detail::require(p >= 0.0 && p <= 1.0, "error probability must lie in [0, 1]");
        detail::require(!target.empty(), "noise target must name at least one qubit");
    }
};

/// On the target subsystem rho_t -> p I/d + (1-p) rho_t, identity elsewhere.
inline DensityMatrix depolarize(const DensityMatrix &rho, const NoiseSpec &spec) {
    spec.validate();
    if (spec.target.size() == rho.num_qubits()) {
        (void)detail::positions_of(rho.labels(), spec.target);
        return mix(spec.p, DensityMatrix::maximally_mixed(rho.labels()), rho);
    }
    const auto rest = partial_trace(rho, spec.target);
    const auto extended = permuted(tensor(DensityMatrix::maximally_mixed(spec.target), rest), rho.labels());
    return mix(spec.p, extended, rho);
}

namespace detail {
inline void require_bob_target(const NoiseSpec &spec) {
    const Labels bob = bob_labels();
    for (const auto &l : spec.target)
        require(std::find(bob.begin(), bob.end(), l) != bob.end(),
                "noise target must be a subset of Bob's qubits (R, R')");
    require_unique(spec.target);
}
} // namespace detail

/// Branch-averaged fidelity with the source when `spec` acts on Bob's state
/// after correction. For a target covering both R and R' this equals
/// 1 - p (1 - 1/4) for every source.
inline double noisy_teleport_fidelity(const SourceQubit &src, const NoiseSpec &spec) {
    spec.validate();
    detail::require_bob_target(spec);
    const PureState target = encode_source(src, bob_labels());
    double f = 0.0;
    for (const auto &b : teleport_exact(src).branches)
        f += b.prob * fidelity(depolarize(to_density(b.corrected), spec), target);
    return f;
}

struct SweepRow {
    double p;
    double exact_fidelity;
    double mc_fidelity;
    double mc_stderr;
    std::uint64_t shots;
    std::uint64_t seed;
};

struct TrajectoryEstimate {
    double mean;
    double std_error;
};

/// Monte Carlo estimate of noisy_teleport_fidelity: sample a branch, and
/// with probability p replace the target qubits by a uniformly random
/// basis ket.
inline TrajectoryEstimate sample_noisy_fidelity(const SourceQubit &src, const NoiseSpec &spec,
                                                std::uint64_t trajectories, std::uint64_t seed) {
    spec.validate();
    detail::require_bob_target(spec);
    detail::require(trajectories >= 2, "need at least two trajectories for an error estimate");
    const PureState target = encode_source(src, bob_labels());
    const auto exact = teleport_exact(src);
    const std::size_t d = spec.dim();

    // Fidelity of each branch when intact, and after replacement by ket k.
    std::vector<double> weights, intact;
    std::vector<std::vector<double>> replaced;
    for (const auto &b : exact.branches) {
        weights.push_back(b.prob);
        const auto rho = to_density(b.corrected);
        intact.push_back(fidelity(rho, target));
        std::vector<double> fk;
        const bool whole = spec.target.size() == rho.num_qubits();
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<Amplitude> ket(d);
            ket[k] = 1.0;
            const auto proj = to_density(PureState(spec.target, std::move(ket)));
            const auto out = whole ? permuted(proj, rho.labels())
                                   : permuted(tensor(proj, partial_trace(rho, spec.target)), rho.labels());
            fk.push_back(fidelity(out, target));
        }
        replaced.push_back(std::move(fk));
    }

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> branch(weights.begin(), weights.end());
    std::bernoulli_distribution error(spec.p);
    std::uniform_int_distribution<std::size_t> ket(0, d - 1);

    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t t = 0; t < trajectories; ++t) {
        const std::size_t b = branch(rng);
        const double f = error(rng) ? replaced[b][ket(rng)] : intact[b];
        sum += f;
        sum2 += f * f;
    }
    const double n = static_cast<double>(trajectories);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

/// Seed for the i-th sweep point, derived from the base seed.
inline std::uint64_t derived_seed(std::uint64_t base, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(index)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (std::uint64_t{out[0]} << 32) | out[1];
}

inline std::vector<SweepRow> fidelity_sweep(const SourceQubit &src, const std::vector<double> &p_values,
                                            const NoiseSpec &templ, std::uint64_t trajectories,
                                            std::uint64_t seed) {
    detail::require(!p_values.empty(), "p grid must not be empty");
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        NoiseSpec spec = templ;
        spec.p = p_values[i];
        const double exact = noisy_teleport_fidelity(src, spec);
        const auto mc = sample_noisy_fidelity(src, spec, trajectories, derived_seed(seed, i));
        rows.push_back({spec.p, exact, mc.mean, mc.std_error, trajectories, seed});
    }
    return rows;
}

/// start, ..., stop with `steps` points (inclusive); steps == 1 gives {start}.
inline std::vector<double> linear_grid(double start, double stop, std::size_t steps) {
    detail::require(steps >= 1, "grid needs at least one point");
    std::vector<double> g;
    for (std::size_t i = 0; i < steps; ++i)
        g.push_back(steps == 1 ? start
                               : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1));
    return g;
}

} // namespace qdtele
