#pragma once

// Re-derives every correction-table row from the state-vector cascade and
// compares it with the printed data.

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdtele/protocol.hpp"

namespace qdtele {

struct Table1RowCheck {
    Table1Row row;
    bool state_matches = true;  ///< 4 * residual equals the printed state, coefficient for coefficient
    bool recovers = true;       ///< printed operator pair restores the source up to phase
    bool phase_only = false;    ///< restored state differs from the source by a non-trivial global phase
    bool in_search_set = true;  ///< printed pair (modulo sign) found by exhaustive search
    bool sign_flipped_factor = false; ///< printed pair uses -Y', equal to Y' only up to phase
    double min_overlap = 1.0;   ///< worst |<xi|out>| over the sources
    std::vector<std::pair<std::string, std::string>> search_set; ///< for the first source

    bool pass() const { return state_matches && recovers && in_search_set; }
};

inline std::vector<Table1RowCheck> verify_table1(std::span<const SourceQubit> sources) {
    detail::require(!sources.empty(), "need at least one source state");
    std::vector<Table1RowCheck> out;
    for (const auto &row : table1_rows()) {
        Table1RowCheck chk;
        chk.row = row;
        chk.sign_flipped_factor = row.left_op[0] == '-' || row.right_op[0] == '-';
        const auto [left, right] = correction_for(row.record());
        const std::pair<std::string, std::string> canon{phase_canonical(row.left_op), phase_canonical(row.right_op)};
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const auto &src = sources[s];
            const auto branches = measure_cascade(src);
            const auto &branch = branches[row.record().index()];
            if (max_abs_diff(branch.residual * 4.0, table1_printed_state(row, src)) > kIdentityTol)
                chk.state_matches = false;

            const PureState target = encode_source(src, bob_labels());
            const PureState restored = apply_correction(left, right, branch.residual);
            const Amplitude ov = inner(target, restored);
            chk.min_overlap = std::min(chk.min_overlap, std::abs(ov));
            if (!equal_up_to_phase(target, restored, kPipelineTol)) chk.recovers = false;
            if (std::abs(ov - 1.0) > kPipelineTol) chk.phase_only = true;

            auto found = recovering_pairs(branch.residual, src);
            if (std::find(found.begin(), found.end(), canon) == found.end()) chk.in_search_set = false;
            if (s == 0) chk.search_set = std::move(found);
        }
        chk.phase_only = chk.phase_only && chk.recovers;
        out.push_back(std::move(chk));
    }
    return out;
}

} // namespace qdtele
