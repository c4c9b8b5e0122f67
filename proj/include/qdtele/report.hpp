#pragma once

// JSON and CSV serialization of verification reports.

#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "qdtele/dotmodel.hpp"
#include "qdtele/noise.hpp"
#include "qdtele/protocol.hpp"
#include "qdtele/reference.hpp"
#include "qdtele/verify.hpp"

namespace qdtele::report {

using nlohmann::json;

inline json complex_json(Amplitude a) { return {{"re", a.real()}, {"im", a.imag()}}; }

inline json teleport_json(const TeleportReport &r) {
    json branches = json::array();
    for (const auto &b : r.branches) {
        branches.push_back({{"pq", to_string(b.record.pq)},
                            {"ppqq", to_string(b.record.ppqq)},
                            {"prob", b.prob},
                            {"fidelity", b.fidelity},
                            {"pass", b.pass},
                            {"state", format_spin_state(b.residual.normalized())},
                            {"correction", {b.left_op, b.right_op}}});
    }
    return {{"alpha", complex_json(r.src.alpha())},
            {"beta", complex_json(r.src.beta())},
            {"branches", std::move(branches)},
            {"all_pass", r.all_pass}};
}

inline json shots_json(const ShotsReport &s) {
    json hist = json::array();
    for (const auto &rec : all_records())
        hist.push_back({{"pq", to_string(rec.pq)}, {"ppqq", to_string(rec.ppqq)}, {"count", s.histogram[rec.index()]}});
    return {{"count", s.shots}, {"seed", s.seed}, {"histogram", std::move(hist)}, {"mean_fidelity", s.mean_fidelity}};
}

inline json table1_json(const std::vector<Table1RowCheck> &rows) {
    json arr = json::array();
    std::size_t verified = 0;
    for (const auto &c : rows) {
        verified += c.pass() ? 1 : 0;
        json search = json::array();
        for (const auto &[l, r] : c.search_set) search.push_back({l, r});
        arr.push_back({{"alice", std::string(to_string(c.row.ppqq)) + " " + std::string(to_string(c.row.pq))},
                       {"pq", to_string(c.row.pq)},
                       {"ppqq", to_string(c.row.ppqq)},
                       {"correction", {c.row.left_op, c.row.right_op}},
                       {"state_matches", c.state_matches},
                       {"recovers", c.recovers},
                       {"phase_only", c.phase_only},
                       {"sign_flipped_factor", c.sign_flipped_factor},
                       {"in_search_set", c.in_search_set},
                       {"min_overlap", c.min_overlap},
                       {"search_set", std::move(search)},
                       {"pass", c.pass()}});
    }
    return {{"rows", std::move(arr)}, {"verified", verified}, {"total", rows.size()},
            {"all_pass", verified == rows.size()}};
}

inline json bennett_json(const BennettSource &src, const std::vector<BennettBlockCheck> &checks) {
    json blocks = json::array();
    bool all = true;
    for (const auto &c : checks) {
        all = all && c.pass;
        blocks.push_back({{"alice", c.alice}, {"coeff_error", c.coeff_error}, {"fidelity", c.fidelity}, {"pass", c.pass}});
    }
    return {{"a", complex_json(src.a)}, {"b", complex_json(src.b)}, {"blocks", std::move(blocks)}, {"all_pass", all}};
}

inline json erratum_json(const std::vector<ErratumCheck> &checks) {
    json arr = json::array();
    for (const auto &c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"checks", std::move(arr)}};
}

inline constexpr const char *kNoiseCsvHeader = "p,exact_fidelity,mc_fidelity,mc_stderr,shots,seed";
inline constexpr const char *kSpectrumCsvHeader = "config,N1,N2,Sz,energy_meV";

inline void write_noise_csv(std::ostream &os, const std::vector<SweepRow> &rows) {
    os << kNoiseCsvHeader << '\n';
    for (const auto &r : rows)
        os << fmt::format("{},{},{},{},{},{}\n", r.p, r.exact_fidelity, r.mc_fidelity, r.mc_stderr, r.shots, r.seed);
}

inline json noise_json(const std::vector<SweepRow> &rows) {
    json arr = json::array();
    for (const auto &r : rows)
        arr.push_back({{"p", r.p},
                       {"exact_fidelity", r.exact_fidelity},
                       {"mc_fidelity", r.mc_fidelity},
                       {"mc_stderr", r.mc_stderr},
                       {"shots", r.shots},
                       {"seed", r.seed}});
    return {{"rows", std::move(arr)}};
}

inline void write_spectrum_csv(std::ostream &os, const std::vector<dots::SpectrumRow> &rows) {
    os << kSpectrumCsvHeader << '\n';
    for (const auto &r : rows)
        os << fmt::format("{},{},{},{},{}\n", r.config.bit_string(), r.config.N(0), r.config.N(1), r.config.Sz(),
                          r.energy);
}

inline json spectrum_json(const std::vector<dots::SpectrumRow> &rows, const dots::GroundState &g) {
    json arr = json::array();
    for (const auto &r : rows)
        arr.push_back({{"config", r.config.bit_string()},
                       {"N1", r.config.N(0)},
                       {"N2", r.config.N(1)},
                       {"Sz", r.config.Sz()},
                       {"energy_meV", r.energy}});
    return {{"rows", std::move(arr)},
            {"ground", {{"energy_meV", g.energy}, {"degeneracy", g.configs.size()}, {"charge_sectors", g.charge_sectors()}}}};
}

} // namespace qdtele::report
