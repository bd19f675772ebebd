#include "majorant/io.hpp"

#include <cmath>
#include <fstream>

namespace majorant {

namespace {

using Index = Eigen::Index;

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw MalformedInput(std::string(what) + ": expected a number");
    return j.get<double>();
}

Json real_rows(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

void fill_rows(const Json& rows, std::size_t n, const char* key, Matrix& m, bool imaginary) {
    if (!rows.is_array() || rows.size() != n) throw MalformedInput(std::string("matrix.") + key + ": expected n rows");
    for (std::size_t r = 0; r < n; ++r) {
        const Json& row = rows[r];
        if (!row.is_array() || row.size() != n)
            throw MalformedInput(std::string("matrix.") + key + ": expected n columns in every row");
        for (std::size_t c = 0; c < n; ++c) {
            const double x = number(row[c], "matrix entry");
            Complex& z = m(Index(r), Index(c));
            z = imaginary ? Complex(z.real(), x) : Complex(x, z.imag());
        }
    }
}

}  // namespace

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::check: return "check";
        case Mode::realize: return "realize";
        case Mode::schur_horn: return "schur-horn";
        case Mode::convergence: return "convergence";
        case Mode::suite: return "suite";
    }
    return "unknown";
}

Mode parse_mode(const std::string& name) {
    for (Mode m : {Mode::check, Mode::realize, Mode::schur_horn, Mode::convergence, Mode::suite})
        if (name == to_string(m)) return m;
    throw MalformedInput("unknown mode '" + name + "'");
}

Json matrix_to_json(const Matrix& m) {
    return Json{{"n", m.rows()}, {"re", real_rows(m.real())}, {"im", real_rows(m.imag())}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("re"))
        throw MalformedInput("matrix: expected an object with \"n\" and \"re\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw MalformedInput("matrix.n: expected a positive integer");
    const auto n = j["n"].get<std::size_t>();
    Matrix m = Matrix::Zero(Index(n), Index(n));
    fill_rows(j["re"], n, "re", m, false);
    if (j.contains("im")) fill_rows(j["im"], n, "im", m, true);
    return m;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], "complex"), number(j[1], "complex")};
    throw MalformedInput("complex: expected a number or [re, im]");
}

Json profile_to_json(const StepProfile& p) { return Json(p.to_vector()); }

StepProfile profile_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw MalformedInput("profile: expected a non-empty array of numbers");
    std::vector<double> v;
    for (const Json& x : j) v.push_back(number(x, "profile"));
    return StepProfile(std::move(v));
}

Json cells_to_json(const BorelCellSet& x) { return Json(std::vector<std::size_t>(x.begin(), x.end())); }

BorelCellSet cells_from_json(const Json& j, std::size_t n) {
    if (!j.is_array()) throw MalformedInput("cell set: expected an array of indices");
    std::vector<std::size_t> cells;
    for (const Json& x : j) {
        if (!x.is_number_integer() || x.get<long long>() < 0) throw MalformedInput("cell set: bad index");
        cells.push_back(x.get<std::size_t>());
    }
    try {
        return BorelCellSet(std::move(cells), n);
    } catch (const PreconditionError& e) {
        throw MalformedInput(std::string("cell set: ") + e.what());
    }
}

Json problem_to_json(const Problem& p) {
    Json a = Json::array();
    for (std::size_t k = 0; k < p.a.dim(); ++k) a.push_back(complex_to_json(p.a[k]));
    return Json{{"A", a},
                {"T", matrix_to_json(p.t.matrix())},
                {"strategy", to_string(p.strategy)},
                {"tol", p.tol},
                {"mode", to_string(p.mode)}};
}

Problem problem_from_json(const Json& j) {
    if (!j.is_object()) throw MalformedInput("problem: expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "A" && key != "T" && key != "strategy" && key != "tol" && key != "mode")
            throw MalformedInput("problem: unknown key '" + key + "'");
    if (!j.contains("A") || !j.contains("T")) throw MalformedInput("problem: \"A\" and \"T\" are required");
    const Json& ja = j["A"];
    if (!ja.is_array() || ja.empty()) throw MalformedInput("problem.A: expected a non-empty array");
    Vector a = Vector::Zero(Index(ja.size()));
    for (std::size_t k = 0; k < ja.size(); ++k) a(Index(k)) = complex_from_json(ja[k]);
    Matrix t = matrix_from_json(j["T"]);
    if (std::size_t(t.rows()) != ja.size()) throw MalformedInput("problem: A and T dimensions differ");

    DominanceStrategy strategy = DominanceStrategy::partition;
    if (j.contains("strategy")) {
        if (!j["strategy"].is_string()) throw MalformedInput("problem.strategy: expected a string");
        try {
            strategy = parse_strategy(j["strategy"].get<std::string>());
        } catch (const PreconditionError& e) {
            throw MalformedInput(std::string("problem.strategy: ") + e.what());
        }
    }
    double tol = kDefaultTol;
    if (j.contains("tol")) {
        tol = number(j["tol"], "problem.tol");
        if (!(tol > 0.0) || !std::isfinite(tol)) throw MalformedInput("problem.tol: expected a positive number");
    }
    Mode mode = Mode::realize;
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw MalformedInput("problem.mode: expected a string");
        mode = parse_mode(j["mode"].get<std::string>());
    }
    try {
        return Problem{DiagonalElement(a), FactorElement(t), strategy, tol, mode};
    } catch (const PreconditionError& e) {
        throw MalformedInput(std::string("problem: ") + e.what());
    }
}

Problem load_problem(const std::string& path) { return problem_from_json(read_json_file(path)); }

Json report_to_json(const MajorizationReport& r) {
    return Json{{"submajorized", r.submajorized},
                {"majorized", r.majorized},
                {"thompson_finite_ok", r.thompson_finite_ok},
                {"finite_feasible", r.finite_feasible},
                {"trace_gap", r.trace_gap},
                {"worst_margin", r.worst_margin},
                {"worst_cell", r.worst_cell},
                {"margins", r.margins}};
}

Json trace_to_json(const StageTrace& t) {
    Json stages = Json::array();
    for (const StageRecord& s : t.stages) {
        Json rec{{"kind", to_string(s.kind)},
                 {"depth", s.depth},
                 {"domain", s.domain},
                 {"sets", s.sets},
                 {"projection_traces", s.projection_traces},
                 {"residual", s.residual},
                 {"truncation", s.truncation},
                 {"note", s.note}};
        Json iv = Json::array();
        for (const auto& [b, e] : s.intervals) iv.push_back(Json::array({b, e}));
        rec["intervals"] = iv;
        if (s.t0) rec["t0"] = *s.t0;
        stages.push_back(std::move(rec));
    }
    return stages;
}

Json result_to_json(const RealizationResult& r) {
    return Json{{"U", matrix_to_json(r.u)},
                {"V", matrix_to_json(r.v)},
                {"S", matrix_to_json(r.s)},
                {"diag_residual", r.diag_residual},
                {"max_residual", r.max_residual},
                {"resolved_residual", r.resolved_residual},
                {"truncation_error", r.truncation_error},
                {"sv_drift", r.sv_drift},
                {"increments_two_norm", r.increments_two_norm},
                {"increments_trace_norm", r.increments_trace_norm},
                {"trace", trace_to_json(r.trace)}};
}

LoadedResult result_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("U") || !j.contains("V") || !j.contains("S"))
        throw MalformedInput("result: expected \"U\", \"V\" and \"S\"");
    LoadedResult r;
    r.u = matrix_from_json(j["U"]);
    r.v = matrix_from_json(j["V"]);
    r.s = matrix_from_json(j["S"]);
    if (j.contains("diag_residual")) r.diag_residual = number(j["diag_residual"], "diag_residual");
    if (j.contains("truncation_error")) r.truncation_error = number(j["truncation_error"], "truncation_error");
    return r;
}

double round_trip_error(const LoadedResult& r, const Matrix& t) {
    if (r.u.rows() != t.rows() || r.v.rows() != t.rows() || r.s.rows() != t.rows())
        throw MalformedInput("result: dimensions do not match T");
    return (r.u * t * r.v - r.s).cwiseAbs().maxCoeff();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw MalformedInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace majorant
