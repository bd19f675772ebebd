#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "majorant/io.hpp"
#include "majorant/oracle.hpp"

using namespace majorant;

TEST(Json, MatrixRoundTrip) {
    Rng rng(1);
    const Matrix m = gaussian_matrix(4, 4, rng);
    const Json j = Json::parse(matrix_to_json(m).dump());
    EXPECT_EQ(matrix_from_json(j), m);
}

TEST(Json, MatrixImaginaryPartOptional) {
    const Matrix m = matrix_from_json(Json::parse(R"({"n": 2, "re": [[1, 2], [3, 4]]})"));
    EXPECT_EQ(m(1, 0), Complex(3, 0));
    EXPECT_EQ(m.imag().norm(), 0.0);
}

TEST(Json, MatrixRejectsBadShapes) {
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"n": 2, "re": [[1, 2]]})")), MalformedInput);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"n": 2, "re": [[1, 2], [3]]})")), MalformedInput);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"n": 0, "re": []})")), MalformedInput);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"n": 1, "re": [["x"]]})")), MalformedInput);
    EXPECT_THROW(matrix_from_json(Json::parse(R"([1, 2])")), MalformedInput);
}

TEST(Json, ComplexForms) {
    EXPECT_EQ(complex_from_json(Json(2.5)), Complex(2.5, 0));
    EXPECT_EQ(complex_from_json(Json::parse("[1, -2]")), Complex(1, -2));
    EXPECT_THROW(complex_from_json(Json::parse("[1, 2, 3]")), MalformedInput);
    EXPECT_EQ(complex_from_json(complex_to_json(Complex(0.25, 7))), Complex(0.25, 7));
}

TEST(Json, ProfileAndCells) {
    const StepProfile p({3, 1, 2});
    EXPECT_EQ(profile_from_json(profile_to_json(p)), p);
    EXPECT_THROW(profile_from_json(Json::array()), MalformedInput);
    const BorelCellSet x({0, 3}, 5);
    EXPECT_EQ(cells_from_json(cells_to_json(x), 5), x);
    EXPECT_THROW(cells_from_json(Json::parse("[7]"), 5), MalformedInput);
    EXPECT_THROW(cells_from_json(Json::parse("[-1]"), 5), MalformedInput);
}

TEST(Json, ProblemRoundTrip) {
    const ThompsonInstance inst = gen_feasible(3, 5);
    const Problem p{inst.a, inst.t, DominanceStrategy::multiplicative, 1e-7, Mode::check};
    const Problem q = problem_from_json(Json::parse(problem_to_json(p).dump()));
    EXPECT_EQ(q.a.diag(), p.a.diag());
    EXPECT_EQ(q.t.matrix(), p.t.matrix());
    EXPECT_EQ(q.strategy, p.strategy);
    EXPECT_EQ(q.tol, p.tol);
    EXPECT_EQ(q.mode, p.mode);
}

TEST(Json, ProblemDefaults) {
    const Problem p = problem_from_json(Json::parse(R"({"A": [1, 0], "T": {"n": 2, "re": [[1, 0], [0, 1]]}})"));
    EXPECT_EQ(p.strategy, DominanceStrategy::partition);
    EXPECT_EQ(p.mode, Mode::realize);
    EXPECT_EQ(p.tol, kDefaultTol);
}

TEST(Json, ProblemRejectsSchemaViolations) {
    const char* bad[] = {
        R"([])",
        R"({"A": [1]})",
        R"({"A": [1, 0], "T": {"n": 1, "re": [[1]]}})",
        R"({"A": [1], "T": {"n": 1, "re": [[1]]}, "extra": 1})",
        R"({"A": [1], "T": {"n": 1, "re": [[1]]}, "strategy": "greedy"})",
        R"({"A": [1], "T": {"n": 1, "re": [[1]]}, "tol": -1})",
        R"({"A": [1], "T": {"n": 1, "re": [[1]]}, "mode": "fly"})",
        R"({"A": [], "T": {"n": 1, "re": [[1]]}})",
    };
    for (const char* s : bad) EXPECT_THROW(problem_from_json(Json::parse(s)), MalformedInput) << s;
}

TEST(Json, ResultRoundTripVerifies) {
    const ThompsonInstance inst = gen_feasible(4, 6);
    const RealizationResult r = general_solve(inst, DominanceStrategy::partition);
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "majorant_io_result.json";
    write_json_file(path.string(), result_to_json(r));
    const LoadedResult loaded = result_from_json(read_json_file(path.string()));
    std::filesystem::remove(path);
    EXPECT_LE(round_trip_error(loaded, inst.t.matrix()), 6 * 1e-9);
    EXPECT_EQ(loaded.diag_residual, r.diag_residual);
    EXPECT_EQ(loaded.truncation_error, r.truncation_error);
}

TEST(Json, ResultCarriesTrace) {
    const RealizationResult r = general_solve(gen_feasible(5, 8), DominanceStrategy::partition);
    const Json j = result_to_json(r);
    ASSERT_TRUE(j["trace"].is_array());
    EXPECT_EQ(j["trace"].size(), r.trace.stages.size());
    EXPECT_EQ(j["trace"][0]["kind"], "reduce");
    EXPECT_TRUE(j["trace"][1].contains("t0"));
}

TEST(Json, ReportFields) {
    const Json j = report_to_json(submajorizes(StepProfile({1, 0}), StepProfile({1, 1})));
    EXPECT_EQ(j["submajorized"], true);
    EXPECT_EQ(j["finite_feasible"], false);
    EXPECT_EQ(j["margins"].size(), 2u);
}

TEST(Json, FileErrors) {
    EXPECT_THROW(read_json_file("/nonexistent/majorant.json"), MalformedInput);
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "majorant_io_bad.json";
    {
        std::ofstream(path) << "{ not json";
    }
    EXPECT_THROW(read_json_file(path.string()), MalformedInput);
    std::filesystem::remove(path);
}

TEST(Mode, ParseRoundTrip) {
    for (Mode m : {Mode::check, Mode::realize, Mode::schur_horn, Mode::convergence, Mode::suite})
        EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_THROW(parse_mode("nope"), MalformedInput);
}
