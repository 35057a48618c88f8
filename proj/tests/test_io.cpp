#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "eub/bounds.hpp"
#include "eub/io.hpp"

using namespace eub;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "eub_io_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

} // namespace

TEST(FormatG12, CompactDeterministicRendering) {
    EXPECT_EQ(format_g12(0.5), "0.5");
    EXPECT_EQ(format_g12(0.0), "0");
    EXPECT_EQ(format_g12(1.0), "1");
    EXPECT_EQ(format_g12(-2.25), "-2.25");
    EXPECT_EQ(format_g12(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_g12(1e-30), "1e-30");
    EXPECT_EQ(format_g12(123456789012345.0), "1.23456789012e+14");
}

TEST(MatrixJson, RoundTripIsExact) {
    ComplexMatrix m(2, 3);
    m << cxd(1.25, -0.5), cxd(0, 1), cxd(3, 0),
         cxd(-0.125, 0.75), cxd(0.1, 0.2), cxd(0, 0);
    json j = matrix_to_json(m);
    ComplexMatrix back = matrix_from_json(j);
    ASSERT_EQ(back.rows(), 2);
    ASSERT_EQ(back.cols(), 3);
    EXPECT_EQ(max_abs(back - m), 0.0);
}

TEST(MatrixJson, RejectsMalformedDocuments) {
    EXPECT_THROW(matrix_from_json(json::parse(R"({"rows": 2, "cols": 2})")), io_error);
    EXPECT_THROW(matrix_from_json(json::parse(
                     R"({"rows": 2, "cols": 1, "data": [[0, 0]]})")),
                 io_error); // wrong element count
    EXPECT_THROW(matrix_from_json(json::parse(
                     R"({"rows": 1, "cols": 1, "data": [[0]]})")),
                 io_error); // entry is not a [re, im] pair
    EXPECT_THROW(matrix_from_json(json::parse("[1, 2, 3]")), io_error);
}

TEST(StateJson, RoundTripPreservesEverything) {
    BipartiteState st = paper_state(0.5);
    json j = state_to_json(st);
    EXPECT_EQ(j["dim_a"], 2);
    EXPECT_EQ(j["dim_b"], 4);
    EXPECT_EQ(j["measured_factor"], "second");
    BipartiteState back = state_from_json(j);
    EXPECT_EQ(back.dim_a, st.dim_a);
    EXPECT_EQ(back.dim_b, st.dim_b);
    EXPECT_EQ(back.measured, Factor::Second);
    EXPECT_EQ(max_abs(back.rho - st.rho), 0.0);
}

TEST(StateJson, RejectsBadMetadata) {
    json j = state_to_json(paper_state(0.5));
    json bad = j;
    bad["measured_factor"] = "third";
    EXPECT_THROW(state_from_json(bad), io_error);
    bad = j;
    bad["dim_a"] = 3; // 3 * 4 != 8
    EXPECT_THROW(state_from_json(bad), io_error);
    bad = j;
    bad.erase("dim_b");
    EXPECT_THROW(state_from_json(bad), io_error);
}

TEST(BasisJson, RoundTripIsExact) {
    auto [r, s] = paper_bases();
    json j = basis_to_json(r);
    MeasurementBasis back = basis_from_json(j);
    EXPECT_EQ(max_abs(back.u - r.u), 0.0);
    EXPECT_THROW(basis_from_json(matrix_to_json(ComplexMatrix::Zero(2, 2))),
                 contract_error); // columns not orthonormal
}

TEST(FileIo, MissingAndMalformedFiles) {
    EXPECT_THROW(load_json_file(temp_path("does_not_exist.json")), io_error);
    std::string p = temp_path("garbage.json");
    write_text_file(p, "{not json");
    EXPECT_THROW(load_json_file(p), io_error);
    std::remove(p.c_str());
}

TEST(FileIo, WriteThenReadBack) {
    std::string p = temp_path("state.json");
    BipartiteState st = paper_state(0.25);
    write_text_file(p, state_to_json(st).dump(2) + "\n");
    BipartiteState back = state_from_json(load_json_file(p));
    EXPECT_EQ(max_abs(back.rho - st.rho), 0.0);
    std::remove(p.c_str());
}

TEST(ProfileJson, ParsesAndCarriesTheProfileFields) {
    auto [r, s] = paper_bases();
    OverlapProfile prof = make_overlap_profile(r, s);
    std::string text = profile_json(prof, 0);
    json j = json::parse(text); // must be well-formed
    ASSERT_TRUE(j.contains("c_sorted"));
    ASSERT_TRUE(j.contains("s_profile"));
    ASSERT_TRUE(j.contains("omega"));
    ASSERT_TRUE(j.contains("w"));
    ASSERT_TRUE(j.contains("projection_distance"));
    EXPECT_EQ(j["c_sorted"].size(), 4u);
    EXPECT_EQ(j["s_profile"].size(), 5u);
    EXPECT_EQ(j["omega"].size(), 8u);
    EXPECT_EQ(j["w"].size(), 4u);
    EXPECT_NEAR(j["c_sorted"][0].get<double>(), 144.0 / 205.0, 1e-11);
    EXPECT_EQ(profile_json(prof, 0), text); // deterministic
}

TEST(ReportJson, ParsesWithAllFieldsInOrder) {
    auto [r, s] = paper_bases();
    BoundReport rep = bound_report(paper_state(0.5), r, s);
    std::string text = report_json(rep);
    json j = json::parse(text);
    const char* keys[] = {"lhs_conditional", "lhs_shannon", "h_a_given_b", "mu",
                          "berta", "coles_piani", "theorem_new", "corollary_new",
                          "direct_sum_majorization", "state_dep_avg",
                          "state_dep_sorted", "profile"};
    for (const char* k : keys) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_NEAR(j["theorem_new"].get<double>(), rep.theorem_new, 1e-11);
    // field order is pinned, not left to the json library
    size_t pos_lhs = text.find("lhs_conditional");
    size_t pos_profile = text.find("\"profile\"");
    EXPECT_LT(pos_lhs, pos_profile);
    EXPECT_EQ(report_json(rep), text);
    EXPECT_EQ(text.back(), '\n');
}
