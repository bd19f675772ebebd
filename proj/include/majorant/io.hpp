#pragma once

// JSON formats for problems and results.
//
//   matrix   {"n": 2, "re": [[..],[..]], "im": [[..],[..]]}   ("im" optional)
//   complex  [re, im] or a bare number
//   profile  [v0, v1, ...]          cell set  [k0, k1, ...]
//   problem  {"A": [complex...], "T": matrix, "strategy": "partition",
//             "tol": 1e-9, "mode": "realize"}

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "majorant/profile.hpp"
#include "majorant/thompson.hpp"

namespace majorant {

using Json = nlohmann::json;

/// Schema violation in an input file (exit code 64 at the CLI).
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { check, realize, schur_horn, convergence, suite };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

struct Problem {
    DiagonalElement a;
    FactorElement t;
    DominanceStrategy strategy = DominanceStrategy::partition;
    double tol = kDefaultTol;
    Mode mode = Mode::realize;
};

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json profile_to_json(const StepProfile& p);
StepProfile profile_from_json(const Json& j);

Json cells_to_json(const BorelCellSet& x);
BorelCellSet cells_from_json(const Json& j, std::size_t n);

Json problem_to_json(const Problem& p);
/// Throws MalformedInput on any schema violation.
Problem problem_from_json(const Json& j);
Problem load_problem(const std::string& path);

Json report_to_json(const MajorizationReport& r);
Json trace_to_json(const StageTrace& t);
Json result_to_json(const RealizationResult& r);

struct LoadedResult {
    Matrix u, v, s;
    double diag_residual = 0.0;
    double truncation_error = 0.0;
};

LoadedResult result_from_json(const Json& j);

/// max |U T V - S| of a stored result against T.
double round_trip_error(const LoadedResult& r, const Matrix& t);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace majorant
