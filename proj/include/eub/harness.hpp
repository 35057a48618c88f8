#pragma once

#include <cstdint>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eub/io.hpp"

// Figure-style parameter sweeps, the Monte-Carlo inequality verifier, and CSV
// emission.  Output is deterministic: fixed grids and seeds give byte-identical
// files.

namespace eub {

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;

    double value(int i) const {
        if (steps == 1) return start;
        return start + (stop - start) * i / (steps - 1);
    }
};

// Parse "a:b:n" into a grid.
inline GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.steps, &trailing) != 3)
        throw domain_error("grid must have the form start:stop:steps, got \"" + text + "\"");
    if (g.steps < 1) throw domain_error("grid needs at least one step");
    if (g.stop < g.start) throw domain_error("grid stop must be >= start");
    return g;
}

struct ScanRecord {
    double parameter = 0.0;
    BoundReport report;
    double projection_distance = 0.0;
};

// Sweep of the built-in 2x4 state family against the fixed 4-dim basis pair.
inline std::vector<ScanRecord> scan_p(const GridSpec& grid) {
    if (!(grid.start > 0.0 && grid.stop < 1.0))
        throw domain_error("scan_p: grid must stay inside the open interval (0,1)");
    auto [r, s] = paper_bases();
    OverlapProfile profile = make_overlap_profile(r, s);
    std::vector<ScanRecord> out;
    out.reserve(static_cast<size_t>(grid.steps));
    for (int i = 0; i < grid.steps; ++i) {
        ScanRecord rec;
        rec.parameter = grid.value(i);
        rec.report = bound_report_with_profile(paper_state(rec.parameter), r, s, profile);
        out.push_back(std::move(rec));
    }
    return out;
}

// Sweep of the 3x3 rotation family.  The two figure-level columns
// (corollary_new, direct_sum_majorization) depend on the bases alone; the
// state-dependent columns are filled against the maximally mixed measured
// state with a trivial (1-dimensional) memory, which keeps every report
// invariant meaningful.
inline std::vector<ScanRecord> scan_theta(const GridSpec& grid) {
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    if (!(grid.start >= 0.0 && grid.stop <= quarter_pi + 1e-12))
        throw domain_error("scan_theta: grid must stay inside [0, pi/4]");
    BipartiteState mixed(3, 1, ComplexMatrix::Identity(3, 3) / 3.0, Factor::First);
    std::vector<ScanRecord> out;
    out.reserve(static_cast<size_t>(grid.steps));
    for (int i = 0; i < grid.steps; ++i) {
        ScanRecord rec;
        rec.parameter = grid.value(i);
        ThetaFamilySpec spec = theta_family(rec.parameter);
        auto [r, s] = u_theta(rec.parameter);
        OverlapProfile profile = make_overlap_profile(r, s);
        profile.projection_distance = spec.projection_distance;
        rec.projection_distance = spec.projection_distance;
        rec.report = bound_report_with_profile(mixed, r, s, std::move(profile));
        out.push_back(std::move(rec));
    }
    return out;
}

inline constexpr const char* kScanCsvHeader =
    "parameter,lhs_conditional,berta,coles_piani,theorem_new,corollary_new,"
    "direct_sum_majorization,state_dep_avg,state_dep_sorted";

// CSV emission; every row is re-checked against the report invariants first.
inline void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << kScanCsvHeader << "\n";
    for (const auto& rec : records) {
        if (auto bad = check_report(rec.report))
            throw verification_error("scan row at parameter " + format_g12(rec.parameter) +
                                     ": " + *bad);
        const BoundReport& r = rec.report;
        os << format_g12(rec.parameter) << ',' << format_g12(r.lhs_conditional) << ','
           << format_g12(r.berta) << ',' << format_g12(r.coles_piani) << ','
           << format_g12(r.theorem_new) << ',' << format_g12(r.corollary_new) << ','
           << format_g12(r.direct_sum_majorization) << ',' << format_g12(r.state_dep_avg) << ','
           << format_g12(r.state_dep_sorted) << "\n";
    }
}

inline std::string write_scan_csv(const std::vector<ScanRecord>& records) {
    std::ostringstream os;
    write_scan_csv(os, records);
    return os.str();
}

struct DimsPair {
    int measured = 2;
    int memory = 1;
};

struct VerifySummary {
    std::uint64_t seed = 0;
    int samples = 0;
    long checks = 0;             // individual inequality/identity evaluations
    double max_violation = 0.0;  // worst deviation seen, even if below tol
    int violation_count = 0;     // deviations exceeding tol
    std::vector<std::string> failures;

    bool passed() const { return violation_count == 0; }
};

namespace detail {

// Stateless splitmix64-style mixer: decorrelates per-sample substreams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

// Draw seeded random instances (cycling dimension pairs, ranks from pure to
// full, alternating which tensor slot is measured), compute a full report for
// each, and check every report inequality plus the conditional-entropy /
// relative-entropy identity
//
//   H(S|B) - H(A|B) = D(rho_AB || pinched rho_AB)
//
// for both bases.  The identity is checked at max(tol, 1e-8): it runs through
// two independent eigendecompositions and cannot be expected to beat that.
inline VerifySummary monte_carlo_verify(int samples, const std::vector<DimsPair>& dims,
                                        std::uint64_t seed, double tol) {
    if (samples < 1) throw domain_error("monte_carlo_verify: samples must be >= 1");
    if (!(tol > 0.0)) throw domain_error("monte_carlo_verify: tol must be positive");
    if (dims.empty()) throw domain_error("monte_carlo_verify: dims list is empty");
    const double identity_tol = std::max(tol, tol::pinch_identity);

    VerifySummary summary;
    summary.seed = seed;
    summary.samples = samples;

    for (int i = 0; i < samples; ++i) {
        const DimsPair& dp = dims[static_cast<size_t>(i) % dims.size()];
        const int total = dp.measured * dp.memory;
        const int rank = 1 + static_cast<int>((static_cast<size_t>(i) / dims.size()) % total);
        const bool measured_first = (i % 2 == 0);
        SeededRng rng(detail::mix_seed(seed, static_cast<std::uint64_t>(i)));

        BipartiteState state = measured_first
            ? random_bipartite_state(dp.measured, dp.memory, rank, rng, Factor::First)
            : random_bipartite_state(dp.memory, dp.measured, rank, rng, Factor::Second);
        MeasurementBasis r(haar_unitary(dp.measured, rng));
        MeasurementBasis s(haar_unitary(dp.measured, rng));

        auto context = [&](const std::string& what, double amount) {
            return "sample " + std::to_string(i) + " (seed " + std::to_string(seed) +
                   ", d_measured " + std::to_string(dp.measured) + ", d_memory " +
                   std::to_string(dp.memory) + ", rank " + std::to_string(rank) + "): " + what +
                   " off by " + format_g12(amount);
        };

        BoundReport rep = bound_report(state, r, s);
        for (const auto& chk : inequality_checks(rep)) {
            ++summary.checks;
            if (chk.margin < 0.0) {
                double amount = -chk.margin;
                if (amount > summary.max_violation) summary.max_violation = amount;
                if (amount > tol) {
                    ++summary.violation_count;
                    summary.failures.push_back(context(chk.name, amount));
                }
            }
        }

        ComplexMatrix canonical = state.canonical_rho();
        auto cond = conditional_entropies(state, r, s);
        const int dmem = state.memory_dim();
        struct IdCase { const char* name; const MeasurementBasis* basis; double h_cond; };
        for (const IdCase& c : {IdCase{"pinching identity (basis r)", &r, cond.h_r_given_b},
                                IdCase{"pinching identity (basis s)", &s, cond.h_s_given_b}}) {
            ++summary.checks;
            double d = relative_entropy(canonical, pinch_first_factor(canonical, *c.basis, dmem));
            double diff = std::abs((c.h_cond - cond.h_a_given_b) - d);
            if (diff > summary.max_violation) summary.max_violation = diff;
            if (diff > identity_tol) {
                ++summary.violation_count;
                summary.failures.push_back(context(c.name, diff));
            }
        }
    }
    return summary;
}

} // namespace eub
