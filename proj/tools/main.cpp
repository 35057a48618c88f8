// eub — entropic uncertainty bounds with quantum memory.
//
// Subcommands:
//   compute     bound report for one (state, basis pair) instance
//   overlaps    overlap profile for a basis pair
//   scan-p      sweep the built-in 2x4 state family (CSV)
//   scan-theta  sweep the built-in 3x3 rotation family (CSV)
//   verify      Monte-Carlo verification of every inequality
//
// The CLI is a thin binding: all computation lives in the headers under
// include/eub.  Exit codes are listed in the help footer.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eub/harness.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage or domain error (bad flags, parameter out of range)\n"
    "  3  i/o error (missing or unparsable file)\n"
    "  4  contract violation (invalid matrix/state/basis)\n"
    "  5  capacity error (enumeration cap exceeded; see --no-enum-cap)\n"
    "  6  verification failure (an inequality was violated)\n"
    "  7  internal error";

// Write to --out (resolved against EUB_OUT_DIR when relative) or stdout.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::string path = out_path;
    const char* dir = std::getenv("EUB_OUT_DIR");
    if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
    eub::write_text_file(path, content);
}

struct BasisArgs {
    std::string r_path;
    std::string s_path;
    bool paper = false;
    std::optional<double> theta;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--basis-r", r_path, "First basis document (JSON unitary)");
        cmd->add_option("--basis-s", s_path, "Second basis document (JSON unitary)");
        cmd->add_flag("--paper-bases", paper, "Use the built-in 4-dim basis pair");
        cmd->add_option("--theta", theta,
                        "Use the built-in 3-dim rotation family at this angle [0, pi/4]");
    }

    // Returns the basis pair; fills projection_distance for the theta family.
    std::pair<eub::MeasurementBasis, eub::MeasurementBasis> resolve(
        double* projection_distance) const {
        int sources = (paper ? 1 : 0) + (theta ? 1 : 0) + (!r_path.empty() ? 1 : 0);
        if (sources != 1 || (!r_path.empty() && s_path.empty()) ||
            (r_path.empty() && !s_path.empty()))
            throw eub::domain_error(
                "choose exactly one basis source: --basis-r/--basis-s, --paper-bases, or --theta");
        if (paper) return eub::paper_bases();
        if (theta) {
            eub::ThetaFamilySpec spec = eub::theta_family(*theta);
            if (projection_distance) *projection_distance = spec.projection_distance;
            return eub::u_theta(*theta);
        }
        return {eub::basis_from_json(eub::load_json_file(r_path)),
                eub::basis_from_json(eub::load_json_file(s_path))};
    }
};

eub::Factor parse_factor(const std::string& text) {
    if (text == "first") return eub::Factor::First;
    if (text == "second") return eub::Factor::Second;
    throw eub::domain_error("--measured must be 'first' or 'second', got '" + text + "'");
}

std::vector<eub::DimsPair> parse_dims(const std::string& text) {
    std::vector<eub::DimsPair> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        eub::DimsPair dp;
        char trailing = 0;
        if (std::sscanf(item.c_str(), "%dx%d%c", &dp.measured, &dp.memory, &trailing) != 2 ||
            dp.measured < 1 || dp.memory < 1)
            throw eub::domain_error("--dims entries must look like MxN (e.g. 3x2), got '" +
                                    item + "'");
        dims.push_back(dp);
    }
    if (dims.empty()) throw eub::domain_error("--dims list is empty");
    return dims;
}

int run(int argc, char** argv) {
    CLI::App app{"entropic uncertainty bounds in the presence of quantum memory"};
    app.require_subcommand(1);
    app.footer(kExitCodeHelp);

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "Bound report for one state and basis pair");
    std::string state_path, measured_override, compute_out;
    std::optional<double> paper_p;
    bool compute_no_cap = false;
    BasisArgs compute_bases;
    compute->add_option("--state", state_path, "State document (JSON)");
    compute->add_option("--paper-state", paper_p, "Use the built-in 2x4 state family at this p");
    compute->add_option("--measured", measured_override, "Override the measured factor")
        ->check(CLI::IsMember({"first", "second"}));
    compute_bases.add_to(compute);
    compute->add_option("--out", compute_out, "Output path (default stdout)");
    compute->add_flag("--no-enum-cap", compute_no_cap, "Lift the submatrix enumeration cap");

    // ---- overlaps ----
    auto* overlaps = app.add_subcommand("overlaps", "Overlap profile for a basis pair");
    std::string overlaps_out;
    bool overlaps_no_cap = false;
    BasisArgs overlaps_bases;
    overlaps_bases.add_to(overlaps);
    overlaps->add_option("--out", overlaps_out, "Output path (default stdout)");
    overlaps->add_flag("--no-enum-cap", overlaps_no_cap, "Lift the submatrix enumeration cap");

    // ---- scan-p ----
    auto* scanp = app.add_subcommand("scan-p", "Sweep the built-in state family (CSV)");
    std::string scanp_grid = "0.01:0.99:99", scanp_out;
    scanp->add_option("--grid", scanp_grid, "Grid start:stop:steps inside (0,1)");
    scanp->add_option("--out", scanp_out, "Output path (default stdout)");

    // ---- scan-theta ----
    auto* scant = app.add_subcommand("scan-theta", "Sweep the built-in rotation family (CSV)");
    std::string scant_grid = "0:0.7853981633974483:200", scant_out;
    scant->add_option("--grid", scant_grid, "Grid start:stop:steps inside [0, pi/4]");
    scant->add_option("--out", scant_out, "Output path (default stdout)");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Monte-Carlo inequality verification");
    int samples = 1000;
    std::string dims_text =
        "2x1,2x2,2x3,2x4,3x1,3x2,3x3,3x4,4x1,4x2,4x3,4x4,5x1,5x2,5x3,5x4";
    std::uint64_t seed = 42;
    double vtol = 1e-9;
    verify->add_option("--samples", samples, "Number of random instances");
    verify->add_option("--dims", dims_text, "Comma-separated d_measured x d_memory pairs");
    verify->add_option("--seed", seed, "Base seed");
    verify->add_option("--tol", vtol, "Violation tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    if (compute->parsed()) {
        const bool have_state_file = !state_path.empty();
        if (have_state_file == paper_p.has_value())
            throw eub::domain_error("choose exactly one of --state or --paper-state");
        double proj = 0.0;
        auto [r, s] = compute_bases.resolve(&proj);
        std::optional<eub::BipartiteState> state;
        if (paper_p)
            state.emplace(eub::paper_state(*paper_p));
        else
            state.emplace(eub::state_from_json(eub::load_json_file(state_path)));
        if (!measured_override.empty())
            state.emplace(state->dim_a, state->dim_b, state->rho,
                          parse_factor(measured_override));
        eub::OverlapProfile profile = eub::make_overlap_profile(r, s, compute_no_cap);
        profile.projection_distance = proj;
        eub::BoundReport rep = eub::bound_report_with_profile(*state, r, s, std::move(profile));
        emit(compute_out, eub::report_json(rep));
        return 0;
    }

    if (overlaps->parsed()) {
        double proj = 0.0;
        auto [r, s] = overlaps_bases.resolve(&proj);
        eub::OverlapProfile profile = eub::make_overlap_profile(r, s, overlaps_no_cap);
        profile.projection_distance = proj;
        emit(overlaps_out, eub::profile_json(profile) + "\n");
        return 0;
    }

    if (scanp->parsed()) {
        auto records = eub::scan_p(eub::parse_grid(scanp_grid));
        std::ostringstream csv;
        eub::write_scan_csv(csv, records);
        emit(scanp_out, csv.str());
        return 0;
    }

    if (scant->parsed()) {
        auto records = eub::scan_theta(eub::parse_grid(scant_grid));
        std::ostringstream csv;
        eub::write_scan_csv(csv, records);
        emit(scant_out, csv.str());
        return 0;
    }

    if (verify->parsed()) {
        auto summary = eub::monte_carlo_verify(samples, parse_dims(dims_text), seed, vtol);
        std::cout << "samples: " << summary.samples << "\n"
                  << "checks: " << summary.checks << "\n"
                  << "max_violation: " << eub::format_g12(summary.max_violation) << "\n"
                  << "violations: " << summary.violation_count << "\n";
        for (const auto& f : summary.failures) std::cout << "violation: " << f << "\n";
        if (!summary.passed())
            throw eub::verification_error(std::to_string(summary.violation_count) +
                                          " violation(s) above tol " + eub::format_g12(vtol));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const eub::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const eub::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const eub::contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const eub::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const eub::verification_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 7;
    }
}
