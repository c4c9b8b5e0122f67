#pragma once

// Double quantum dot in the occupation-number basis:
//
//   H = sum_i (U/2) N_i (N_i - 1) + U12 N_1 N_2 - e sum_i V_i N_i
//       + sum_{ik} eps_ik n_ik - g muB B S_z
//
// There is no hopping term, so H is diagonal in the Fock basis and the
// spectrum is obtained by enumerating configurations.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdtele/qcore.hpp"

namespace qdtele::dots {

/// Energies in meV, temperature in K, field in T.
namespace constants {
inline constexpr double kBohrMagneton = 5.7883818060e-2; // meV / T
inline constexpr double kBoltzmann = 8.617333262e-2;     // meV / K
inline constexpr double kDefaultG = 0.44;                // |g| of GaAs; configuration default
} // namespace constants

enum class Spin { Up, Down };

struct DotParams {
    double U = 5.0;               ///< on-site repulsion
    double U12 = 1.0;             ///< inter-dot repulsion
    std::array<double, 2> V{0.0, 0.0}; ///< gate voltages (mV); e*V enters in meV
    double omega0 = 1.0;          ///< orbital spacing hbar*omega0
    std::size_t orbitals = 2;     ///< orbitals kept per dot
    /// eps[i][k]; empty means eps_ik = k * omega0.
    std::vector<std::vector<double>> eps;
    double g = constants::kDefaultG;
    double B = 0.0;
    double T = 0.06;

    double orbital_energy(std::size_t dot, std::size_t k) const {
        if (eps.empty()) return static_cast<double>(k) * omega0;
        return eps.at(dot).at(k);
    }

    void validate() const {
        detail::require(U > 0.0, "U must be positive");
        detail::require(U12 >= 0.0, "U12 must be non-negative");
        detail::require(orbitals >= 1, "at least one orbital per dot");
        detail::require(orbitals <= 4, "at most 4 orbitals per dot");
        if (!eps.empty()) {
            detail::require(eps.size() == 2, "eps needs one row per dot");
            for (const auto &row : eps) {
                detail::require(row.size() == orbitals, "eps row length must equal the orbital count");
                detail::require(std::is_sorted(row.begin(), row.end()), "orbital energies must be nondecreasing");
            }
        }
    }
};

/// Occupation n_{i k sigma} of every mode. Mode order: dot, then orbital,
/// then spin (up before down).
class FockConfig {
  public:
    FockConfig(std::size_t orbitals, std::vector<int> occupation)
        : orbitals_(orbitals), occ_(std::move(occupation)) {
        detail::require(occ_.size() == modes(orbitals_), "occupation vector must cover 4*orbitals modes");
        for (int n : occ_) detail::require(n == 0 || n == 1, "occupations must be 0 or 1");
    }

    static std::size_t modes(std::size_t orbitals) { return 2 * orbitals * 2; }
    static std::size_t mode(std::size_t orbitals, std::size_t dot, std::size_t k, Spin s) {
        return (dot * orbitals + k) * 2 + (s == Spin::Up ? 0 : 1);
    }

    /// Mode m occupied iff bit (modes-1-m) of `bits` is set, matching bit_string().
    static FockConfig from_bits(std::size_t orbitals, std::uint32_t bits) {
        const std::size_t m = modes(orbitals);
        std::vector<int> occ(m);
        for (std::size_t i = 0; i < m; ++i) occ[i] = static_cast<int>((bits >> (m - 1 - i)) & 1U);
        return FockConfig(orbitals, std::move(occ));
    }

    std::size_t orbitals() const { return orbitals_; }
    int n(std::size_t dot, std::size_t k, Spin s) const { return occ_[mode(orbitals_, dot, k, s)]; }
    int n_orbital(std::size_t dot, std::size_t k) const { return n(dot, k, Spin::Up) + n(dot, k, Spin::Down); }

    int N(std::size_t dot) const {
        int total = 0;
        for (std::size_t k = 0; k < orbitals_; ++k) total += n_orbital(dot, k);
        return total;
    }
    int total() const { return N(0) + N(1); }

    double Sz() const {
        int up = 0, down = 0;
        for (std::size_t d = 0; d < 2; ++d)
            for (std::size_t k = 0; k < orbitals_; ++k) {
                up += n(d, k, Spin::Up);
                down += n(d, k, Spin::Down);
            }
        return 0.5 * (up - down);
    }

    std::string bit_string() const {
        std::string s;
        for (int n : occ_) s.push_back(n ? '1' : '0');
        return s;
    }

    std::string charge_sector() const { return "(" + std::to_string(N(0)) + "," + std::to_string(N(1)) + ")"; }

    bool operator==(const FockConfig &) const = default;

  private:
    std::size_t orbitals_;
    std::vector<int> occ_;
};

inline double config_energy(const FockConfig &c, const DotParams &p) {
    detail::require(c.orbitals() == p.orbitals, "configuration and parameters disagree on orbital count");
    double e = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double Ni = c.N(i);
        e += 0.5 * p.U * Ni * (Ni - 1.0);
        e -= p.V[i] * Ni;
        for (std::size_t k = 0; k < p.orbitals; ++k) e += p.orbital_energy(i, k) * c.n_orbital(i, k);
    }
    e += p.U12 * c.N(0) * c.N(1);
    e -= p.g * constants::kBohrMagneton * p.B * c.Sz();
    return e;
}

/// Every configuration with exactly N electrons (all of them if N is empty).
inline std::vector<FockConfig> enumerate_configs(std::size_t orbitals, std::optional<int> N = std::nullopt) {
    const std::size_t m = FockConfig::modes(orbitals);
    std::vector<FockConfig> out;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits)
        if (!N || std::popcount(bits) == *N) out.push_back(FockConfig::from_bits(orbitals, bits));
    return out;
}

struct GroundState {
    double energy;
    std::vector<FockConfig> configs; ///< degenerate minimum-energy set
    std::vector<std::string> charge_sectors() const {
        std::vector<std::string> s;
        for (const auto &c : configs)
            if (std::find(s.begin(), s.end(), c.charge_sector()) == s.end()) s.push_back(c.charge_sector());
        return s;
    }
};

inline GroundState ground_config(int N, const DotParams &p, double degeneracy_tol = 1e-12) {
    p.validate();
    detail::require(N >= 0, "electron count must be non-negative");
    detail::require(static_cast<std::size_t>(N) <= FockConfig::modes(p.orbitals),
                    "electron count exceeds available modes");
    GroundState g{INFINITY, {}};
    for (auto &c : enumerate_configs(p.orbitals, N)) {
        const double e = config_energy(c, p);
        if (e < g.energy - degeneracy_tol) {
            g.energy = e;
            g.configs.clear();
        }
        if (std::abs(e - g.energy) <= degeneracy_tol) g.configs.push_back(std::move(c));
    }
    return g;
}

/// Dense H assembled from Jordan-Wigner fermion operators, basis index =
/// FockConfig bit pattern. Independent of config_energy.
inline Eigen::MatrixXd hamiltonian_matrix(const DotParams &p) {
    p.validate();
    const std::size_t m = FockConfig::modes(p.orbitals);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << m);
    using Mat = Eigen::MatrixXd;

    // Annihilator for mode j with the Jordan-Wigner string over modes < j.
    auto annihilator = [&](std::size_t j) {
        Mat c = Mat::Zero(dim, dim);
        const std::uint32_t mask = std::uint32_t{1} << (m - 1 - j);
        for (Eigen::Index s = 0; s < dim; ++s) {
            const auto bits = static_cast<std::uint32_t>(s);
            if (!(bits & mask)) continue;
            const std::uint32_t before = bits >> (m - j);
            const double sign = (std::popcount(before) % 2) ? -1.0 : 1.0;
            c(static_cast<Eigen::Index>(bits & ~mask), s) = sign;
        }
        return c;
    };

    std::vector<Mat> number(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Mat c = annihilator(j);
        number[j] = c.transpose() * c;
    }
    const Mat I = Mat::Identity(dim, dim);
    std::array<Mat, 2> Ndot{Mat::Zero(dim, dim), Mat::Zero(dim, dim)};
    Mat Sz = Mat::Zero(dim, dim);
    Mat H = Mat::Zero(dim, dim);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < p.orbitals; ++k) {
            const auto up = FockConfig::mode(p.orbitals, i, k, Spin::Up);
            const auto dn = FockConfig::mode(p.orbitals, i, k, Spin::Down);
            Ndot[i] += number[up] + number[dn];
            Sz += 0.5 * (number[up] - number[dn]);
            H += p.orbital_energy(i, k) * (number[up] + number[dn]);
        }
    for (std::size_t i = 0; i < 2; ++i) {
        H += 0.5 * p.U * Ndot[i] * (Ndot[i] - I);
        H -= p.V[i] * Ndot[i];
    }
    H += p.U12 * Ndot[0] * Ndot[1];
    H -= p.g * constants::kBohrMagneton * p.B * Sz;
    return H;
}

/// Zeeman gap |g| muB |B| between the two single-electron spin levels.
inline double zeeman_splitting(const DotParams &p) {
    return std::abs(p.g) * constants::kBohrMagneton * std::abs(p.B);
}

/// Boltzmann population of `target` over the two Zeeman levels of one
/// electron: 1/(1 + exp(-dE/kT)) for the lower level.
inline double thermal_init_fidelity(const DotParams &p, Spin target) {
    detail::require(p.T > 0.0, "temperature must be positive");
    const double dE = zeeman_splitting(p);
    const double ground = 1.0 / (1.0 + std::exp(-dE / (constants::kBoltzmann * p.T)));
    // -g muB B Sz is lowest for Sz = +1/2 when g*B > 0.
    const Spin lower = (p.g * p.B >= 0.0) ? Spin::Up : Spin::Down;
    return target == lower ? ground : 1.0 - ground;
}

struct SpectrumRow {
    FockConfig config;
    double energy;
};

/// Configurations (optionally restricted to N electrons) sorted by energy.
inline std::vector<SpectrumRow> spectrum(const DotParams &p, std::optional<int> N = std::nullopt) {
    p.validate();
    std::vector<SpectrumRow> rows;
    for (auto &c : enumerate_configs(p.orbitals, N)) {
        const double e = config_energy(c, p);
        rows.push_back({std::move(c), e});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.energy < b.energy; });
    return rows;
}

} // namespace qdtele::dots
