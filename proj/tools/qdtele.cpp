// qdtele: command-line driver for the quantum-dot teleportation checks.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 bad arguments,
// 3 output could not be written.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qdtele/dotmodel.hpp"
#include "qdtele/noise.hpp"
#include "qdtele/protocol.hpp"
#include "qdtele/reference.hpp"
#include "qdtele/report.hpp"
#include "qdtele/verify.hpp"

namespace {

using namespace qdtele;
using report::json;

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string alpha = "0.6";
    std::string beta = "0.8";
    std::uint64_t shots = 0;
    std::uint64_t seed = 1;
    std::size_t sources = 100;
    double p_start = 0.0;
    double p_stop = 1.0;
    std::size_t steps = 11;
    std::string target = "R,R'";
    std::string format;
    std::string out;
    dots::DotParams dot;
    std::optional<int> electrons;
};

/// "re[,im]" -> complex; im defaults to 0.
Amplitude parse_complex(const std::string &text) {
    std::istringstream is(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(is >> re)) throw PreconditionError("cannot parse complex value '" + text + "'");
    if (is >> comma) {
        if (comma != ',' || !(is >> im)) throw PreconditionError("cannot parse complex value '" + text + "'");
        std::string rest;
        if (is >> rest) throw PreconditionError("trailing characters in complex value '" + text + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) throw PreconditionError("complex value must be finite");
    return {re, im};
}

struct ParsedSource {
    SourceQubit src;
    bool auto_normalized;
};

ParsedSource parse_source(const RunConfig &cfg) {
    const Amplitude a = parse_complex(cfg.alpha), b = parse_complex(cfg.beta);
    const bool off = std::abs(std::norm(a) + std::norm(b) - 1.0) > kIdentityTol;
    if (off) std::cerr << "warning: source amplitudes rescaled to unit norm\n";
    return {SourceQubit::normalized(a, b), off};
}

Labels parse_labels(const std::string &text) {
    Labels out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ','))
        if (!item.empty()) out.emplace_back(item);
    return out;
}

void emit(const RunConfig &cfg, const std::string &text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
    f << text;
    if (!f) throw IoError("failed writing '" + cfg.out + "'");
}

void require_json(const RunConfig &cfg) {
    if (!cfg.format.empty() && cfg.format != "json")
        throw PreconditionError("this subcommand only supports --format json");
}

int cmd_teleport(const RunConfig &cfg) {
    require_json(cfg);
    const auto [src, rescaled] = parse_source(cfg);
    const auto r = teleport_exact(src);
    json j = report::teleport_json(r);
    j["auto_normalized"] = rescaled;
    bool ok = r.all_pass;
    if (cfg.shots > 0) {
        const auto s = teleport_shots(src, cfg.shots, cfg.seed);
        j["shots"] = report::shots_json(s);
        ok = ok && std::abs(s.mean_fidelity - 1.0) <= kPipelineTol;
    }
    emit(cfg, j.dump(2) + "\n");
    return ok ? kPass : kFail;
}

int cmd_table1(const RunConfig &cfg) {
    require_json(cfg);
    if (cfg.sources == 0) throw PreconditionError("--sources must be at least 1");
    std::mt19937_64 rng(cfg.seed);
    std::vector<SourceQubit> sources;
    for (std::size_t i = 0; i < cfg.sources; ++i) sources.push_back(SourceQubit::random(rng));
    const auto rows = verify_table1(sources);
    json j = report::table1_json(rows);
    j["sources"] = cfg.sources;
    j["seed"] = cfg.seed;
    emit(cfg, j.dump(2) + "\n");
    std::cerr << j["verified"].get<std::size_t>() << "/16 rows verified\n";
    return j["all_pass"].get<bool>() ? kPass : kFail;
}

int cmd_bennett(const RunConfig &cfg) {
    require_json(cfg);
    const Amplitude a = parse_complex(cfg.alpha), b = parse_complex(cfg.beta);
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (!(n > 0.0)) throw PreconditionError("source amplitudes must not both vanish");
    const BennettSource src(a / n, b / n);
    const json j = report::bennett_json(src, check_bennett(src));
    emit(cfg, j.dump(2) + "\n");
    return j["all_pass"].get<bool>() ? kPass : kFail;
}

int cmd_erratum(const RunConfig &cfg) {
    require_json(cfg);
    const auto [src, rescaled] = parse_source(cfg);
    (void)rescaled;
    const auto checks = erratum_check(src.alpha(), src.beta());
    emit(cfg, report::erratum_json(checks).dump(2) + "\n");
    for (const auto &c : checks)
        if (!c.pass) return kFail;
    return kPass;
}

int cmd_noise(const RunConfig &cfg) {
    if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json")
        throw PreconditionError("--format must be csv or json");
    const auto [src, rescaled] = parse_source(cfg);
    (void)rescaled;
    if (cfg.steps == 0) throw PreconditionError("--steps must be at least 1");
    for (double p : {cfg.p_start, cfg.p_stop})
        if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p values must lie in [0, 1]");
    NoiseSpec spec;
    spec.target = parse_labels(cfg.target);
    const auto rows = fidelity_sweep(src, linear_grid(cfg.p_start, cfg.p_stop, cfg.steps), spec, cfg.shots, cfg.seed);

    std::ostringstream os;
    if (cfg.format == "json")
        os << report::noise_json(rows).dump(2) << "\n";
    else
        report::write_noise_csv(os, rows);
    emit(cfg, os.str());

    bool ok = true;
    for (const auto &r : rows) {
        if (std::abs(r.mc_fidelity - r.exact_fidelity) > 4.0 * r.mc_stderr + kIdentityTol) ok = false;
        if (spec.target.size() == 2 &&
            std::abs(r.exact_fidelity - (1.0 - r.p * (1.0 - 1.0 / 4.0))) > kIdentityTol)
            ok = false;
    }
    return ok ? kPass : kFail;
}

int cmd_dots(const RunConfig &cfg) {
    if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json")
        throw PreconditionError("--format must be csv or json");
    const int n = cfg.electrons.value_or(2);
    const auto ground = dots::ground_config(n, cfg.dot);
    const auto rows = dots::spectrum(cfg.dot, n);

    std::ostringstream os;
    if (cfg.format == "json")
        os << report::spectrum_json(rows, ground).dump(2) << "\n";
    else
        report::write_spectrum_csv(os, rows);
    emit(cfg, os.str());

    std::string sectors;
    for (const auto &s : ground.charge_sectors()) sectors += (sectors.empty() ? "" : " ") + s;
    std::ostream &summary = cfg.out.empty() ? std::cerr : std::cout;
    summary << "ground charge sector " << sectors << ", degeneracy " << ground.configs.size() << ", energy "
            << ground.energy << " meV\n";
    return kPass;
}

void add_source_flags(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--alpha", cfg.alpha, "source amplitude alpha as re[,im]");
    sub->add_option("--beta", cfg.beta, "source amplitude beta as re[,im]");
}

void add_output_flags(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--format", cfg.format, "output format (json|csv)");
    sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum-dot teleportation simulator and verification suite"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *teleport = app.add_subcommand("teleport", "run the 16-branch protocol (and optional sampled shots)");
    add_source_flags(teleport, cfg);
    add_output_flags(teleport, cfg);
    teleport->add_option("--shots", cfg.shots, "number of sampled runs (0 = exact only)");
    teleport->add_option("--seed", cfg.seed, "random seed");

    auto *table1 = app.add_subcommand("table1", "re-derive and check every correction-table row");
    add_output_flags(table1, cfg);
    table1->add_option("--sources", cfg.sources, "random source states per row");
    table1->add_option("--seed", cfg.seed, "random seed");

    auto *bennett = app.add_subcommand("bennett", "check the three-qubit reference circuit");
    bennett->add_option("--a", cfg.alpha, "amplitude of |0> as re[,im]");
    bennett->add_option("--b", cfg.beta, "amplitude of |1> as re[,im]");
    add_output_flags(bennett, cfg);

    auto *erratum = app.add_subcommand("erratum", "run the two-qubit Hadamard erratum checks");
    add_source_flags(erratum, cfg);
    add_output_flags(erratum, cfg);

    auto *noise = app.add_subcommand("noise", "depolarizing-noise fidelity sweep");
    add_source_flags(noise, cfg);
    add_output_flags(noise, cfg);
    cfg.shots = 0;
    std::uint64_t trajectories = 100000;
    noise->add_option("--shots", trajectories, "Monte Carlo trajectories per point");
    noise->add_option("--seed", cfg.seed, "random seed");
    noise->add_option("--p-start", cfg.p_start, "first error probability");
    noise->add_option("--p-stop", cfg.p_stop, "last error probability");
    noise->add_option("--steps", cfg.steps, "number of grid points");
    noise->add_option("--target", cfg.target, "comma-separated noisy qubits, subset of R,R'");

    auto *dots_cmd = app.add_subcommand("dots", "double-dot spectrum and ground configuration");
    add_output_flags(dots_cmd, cfg);
    dots_cmd->add_option("--U", cfg.dot.U, "on-site repulsion (meV)");
    dots_cmd->add_option("--U12", cfg.dot.U12, "inter-dot repulsion (meV)");
    dots_cmd->add_option("--V1", cfg.dot.V[0], "gate voltage of dot 1 (mV)");
    dots_cmd->add_option("--V2", cfg.dot.V[1], "gate voltage of dot 2 (mV)");
    dots_cmd->add_option("--omega0", cfg.dot.omega0, "orbital spacing (meV)");
    dots_cmd->add_option("--orbitals", cfg.dot.orbitals, "orbitals per dot");
    dots_cmd->add_option("--g", cfg.dot.g, "g-factor");
    dots_cmd->add_option("--B", cfg.dot.B, "magnetic field (T)");
    dots_cmd->add_option("--T", cfg.dot.T, "temperature (K)");
    dots_cmd->add_option("--N", cfg.electrons, "electron count (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*teleport) return cmd_teleport(cfg);
        if (*table1) return cmd_table1(cfg);
        if (*bennett) return cmd_bennett(cfg);
        if (*erratum) return cmd_erratum(cfg);
        if (*noise) {
            cfg.shots = trajectories;
            return cmd_noise(cfg);
        }
        if (*dots_cmd) return cmd_dots(cfg);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
