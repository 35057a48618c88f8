#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eub/bounds.hpp"

// File formats.
//
// Matrix document (JSON): { "rows": r, "cols": c, "data": [[re, im], ...] }
// with data in row-major order.  A basis is stored as the unitary whose
// columns are the basis vectors.  A state document adds "dim_a", "dim_b" and
// "measured_factor" ("first" | "second").
//
// Report and profile exports are emitted by a hand-rolled writer with every
// number at 12 significant digits, so identical runs produce byte-identical
// files regardless of library version.

namespace eub {

// 12-significant-digit formatting used by all report/CSV emission.
inline std::string format_g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw io_error("write to " + path + " failed");
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        const int rows = j.at("rows").get<int>();
        const int cols = j.at("cols").get<int>();
        const auto& data = j.at("data");
        if (rows < 1 || cols < 1)
            throw io_error("matrix document: non-positive dimensions");
        if (static_cast<int>(data.size()) != rows * cols)
            throw io_error("matrix document: data has " + std::to_string(data.size()) +
                           " entries, expected " + std::to_string(rows * cols));
        ComplexMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const auto& e = data.at(static_cast<size_t>(i) * cols + k);
                m(i, k) = cxd(e.at(0).get<double>(), e.at(1).get<double>());
            }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed matrix document: ") + e.what());
    }
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json j;
    j["rows"] = static_cast<int>(m.rows());
    j["cols"] = static_cast<int>(m.cols());
    auto data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            data.push_back({m(i, k).real(), m(i, k).imag()});
    j["data"] = std::move(data);
    return j;
}

inline BipartiteState state_from_json(const nlohmann::json& j) {
    int da = 0, db = 0;
    std::string meas;
    try {
        da = j.at("dim_a").get<int>();
        db = j.at("dim_b").get<int>();
        meas = j.at("measured_factor").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed state document: ") + e.what());
    }
    Factor f;
    if (meas == "first")
        f = Factor::First;
    else if (meas == "second")
        f = Factor::Second;
    else
        throw io_error("state document: measured_factor must be \"first\" or \"second\", got \"" +
                       meas + "\"");
    ComplexMatrix rho = matrix_from_json(j);
    // shape disagreeing with the declared dims is a document defect, not a
    // physics violation; flag it here so the caller sees an io failure
    if (da <= 0 || db <= 0 ||
        rho.rows() != static_cast<Eigen::Index>(da) * db)
        throw io_error("state document: matrix is " + std::to_string(rho.rows()) + "x" +
                       std::to_string(rho.cols()) + " but dims declare " +
                       std::to_string(da) + "*" + std::to_string(db));
    return BipartiteState(da, db, std::move(rho), f);
}

inline nlohmann::json state_to_json(const BipartiteState& s) {
    nlohmann::json j = matrix_to_json(s.rho);
    j["dim_a"] = s.dim_a;
    j["dim_b"] = s.dim_b;
    j["measured_factor"] = s.measured == Factor::First ? "first" : "second";
    return j;
}

inline MeasurementBasis basis_from_json(const nlohmann::json& j) {
    return MeasurementBasis(matrix_from_json(j));
}

inline nlohmann::json basis_to_json(const MeasurementBasis& b) { return matrix_to_json(b.u); }

namespace detail {

inline void append_array(std::string& out, const char* name, const std::vector<double>& v,
                         const char* indent) {
    out += indent;
    out += '"';
    out += name;
    out += "\": [";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_g12(v[i]);
    }
    out += ']';
}

} // namespace detail

// Profile export: c_sorted, s_profile, omega, w, projection_distance.
inline std::string profile_json(const OverlapProfile& p, int base_indent = 0) {
    std::string pad(static_cast<size_t>(base_indent), ' ');
    std::string inner = pad + "  ";
    std::string out = "{\n";
    detail::append_array(out, "c_sorted", p.c_sorted, inner.c_str());
    out += ",\n";
    detail::append_array(out, "s_profile", p.s_profile, inner.c_str());
    out += ",\n";
    detail::append_array(out, "omega", p.omega, inner.c_str());
    out += ",\n";
    detail::append_array(out, "w", p.w, inner.c_str());
    out += ",\n";
    out += inner + "\"projection_distance\": " + format_g12(p.projection_distance) + "\n";
    out += pad + "}";
    return out;
}

// Report export mirroring the BoundReport fields, profile nested at the end.
inline std::string report_json(const BoundReport& r) {
    std::string out = "{\n";
    auto field = [&out](const char* name, double v, bool comma = true) {
        out += std::string("  \"") + name + "\": " + format_g12(v) + (comma ? ",\n" : "\n");
    };
    field("lhs_conditional", r.lhs_conditional);
    field("lhs_shannon", r.lhs_shannon);
    field("h_a_given_b", r.h_a_given_b);
    field("mu", r.mu);
    field("berta", r.berta);
    field("coles_piani", r.coles_piani);
    field("theorem_new", r.theorem_new);
    field("corollary_new", r.corollary_new);
    field("direct_sum_majorization", r.direct_sum_majorization);
    field("state_dep_avg", r.state_dep_avg);
    field("state_dep_sorted", r.state_dep_sorted);
    out += "  \"profile\": " + profile_json(r.profile, 2) + "\n";
    out += "}\n";
    return out;
}

} // namespace eub
