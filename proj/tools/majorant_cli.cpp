// majorant: feasibility checks and diagonal realization from the command line.
//
// Exit codes: 0 success, 2 infeasible, 3 precondition violated, 64 malformed
// input, 1 failed acceptance suite or round-trip verification.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "majorant/io.hpp"
#include "majorant/kernels.hpp"
#include "majorant/oracle.hpp"
#include "majorant/schur_horn.hpp"
#include "majorant/suites.hpp"

namespace {

using namespace majorant;

constexpr int kExitInfeasible = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitMalformed = 64;

struct Options {
    std::string input, output, result;
    std::optional<double> tol;
    std::optional<std::string> strategy;
    std::uint64_t seed = 1;
    std::string resolutions = "4,16,64,256";
    std::vector<int> criteria;
    std::string kind = "expectation";
    std::size_t n = 8;
};

Problem load(const Options& o) {
    if (o.input.empty()) throw MalformedInput("--input is required");
    Problem p = load_problem(o.input);
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw MalformedInput("--tol must be positive");
        p.tol = *o.tol;
    }
    if (o.strategy) {
        try {
            p.strategy = parse_strategy(*o.strategy);
        } catch (const PreconditionError& e) {
            throw MalformedInput(e.what());
        }
    }
    return p;
}

void emit(const Options& o, const Json& j) {
    if (o.output.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_json_file(o.output, j);
}

std::vector<std::size_t> parse_resolutions(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw MalformedInput("--resolutions: '" + item + "' is not an integer");
        }
        if (pos != item.size() || v < 1 || (v & (v - 1)) != 0)
            throw MalformedInput("--resolutions: " + item + " is not a power of two");
        out.push_back(std::size_t(v));
    }
    if (out.empty()) throw MalformedInput("--resolutions: empty list");
    return out;
}

int cmd_check(const Options& o) {
    const Problem p = load(o);
    const MajorizationReport rep = submajorizes(p.a.modulus_profile(), singular_profile(p.t), p.tol);
    emit(o, Json{{"ii1_feasible", rep.submajorized}, {"finite_feasible", rep.finite_feasible},
                 {"report", report_to_json(rep)}});
    return rep.submajorized ? 0 : kExitInfeasible;
}

void summarize(const RealizationResult& r) {
    std::cout << "realized: residual=" << r.diag_residual << ", truncation=" << r.truncation_error
              << ", stages=" << r.trace.stages.size() << '\n';
}

int cmd_realize(const Options& o) {
    const Problem p = load(o);
    const RealizationResult r = general_solve(ThompsonInstance{p.a, p.t}, p.strategy, p.tol);
    if (!o.output.empty()) write_json_file(o.output, result_to_json(r));
    summarize(r);
    return 0;
}

int cmd_schur_horn(const Options& o) {
    const Problem p = load(o);
    std::vector<double> target(p.a.dim());
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (std::abs(p.a[k].imag()) > p.tol) throw PreconditionError("schur-horn: A must be real");
        target[k] = p.a[k].real();
    }
    const SchurHornResult sh = realize_schur_horn(p.t, target, p.tol);
    RealizationResult r;
    r.u = sh.unitary;
    r.v = sh.unitary.adjoint();
    finalize_result(r, p.t.matrix(), p.a.diag());
    StageRecord rec;
    rec.kind = StageKind::schur_horn;
    rec.domain = target.size();
    rec.note = std::to_string(sh.rotations) + " rotations";
    r.trace.stages.push_back(rec);
    if (!o.output.empty()) write_json_file(o.output, result_to_json(r));
    summarize(r);
    return 0;
}

int cmd_convergence(const Options& o) {
    const Problem p = load(o);
    const std::vector<std::size_t> res = parse_resolutions(o.resolutions);
    std::vector<double> a(p.a.dim());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::abs(p.a[k]);
    const auto rows = resolution_convergence(a, singular_profile(p.t).to_vector(), res, p.strategy, p.tol);
    if (o.output.empty()) {
        write_convergence_csv(std::cout, rows);
    } else {
        std::ofstream out(o.output);
        write_convergence_csv(out, rows);
    }
    return 0;
}

int cmd_suite(const Options& o) {
    bool ok = true;
    for (const CriterionResult& r : run_acceptance(o.seed, o.criteria)) {
        std::cout << format_line(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int cmd_generate(const Options& o) {
    InstanceSpec spec;
    spec.seed = o.seed;
    spec.n = o.n;
    DominanceStrategy strategy = DominanceStrategy::partition;
    try {
        spec.kind = parse_instance_kind(o.kind);
        if (o.strategy) strategy = parse_strategy(*o.strategy);
    } catch (const PreconditionError& e) {
        throw MalformedInput(e.what());
    }
    const ThompsonInstance inst = generate(spec);
    Problem p{inst.a, inst.t, strategy};
    emit(o, problem_to_json(p));
    return 0;
}

int cmd_verify(const Options& o) {
    const Problem p = load(o);
    if (o.result.empty()) throw MalformedInput("--result is required");
    const LoadedResult r = result_from_json(read_json_file(o.result));
    const double err = round_trip_error(r, p.t.matrix());
    const double bound = double(p.t.dim()) * p.tol * std::max(1.0, operator_norm(p.t.matrix()));
    std::cout << "round trip: |UTV - S| = " << err << (err <= bound ? " (ok)" : " (FAILED)") << '\n';
    return err <= bound ? 0 : 1;
}

int cmd_solve(const Options& o) {
    switch (load(o).mode) {
        case Mode::check: return cmd_check(o);
        case Mode::realize: return cmd_realize(o);
        case Mode::schur_horn: return cmd_schur_horn(o);
        case Mode::convergence: return cmd_convergence(o);
        case Mode::suite: return cmd_suite(o);
    }
    return kExitMalformed;
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    Options o;
    CLI::App app{"Diagonal realization under submajorization"};
    app.require_subcommand(1);

    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--input", o.input, "problem file (JSON)");
        sub->add_option("--output", o.output, "output file (stdout if omitted)");
        sub->add_option("--tol", o.tol, "absolute tolerance");
        sub->add_option("--strategy", o.strategy, "dominance strategy: partition | multiplicative");
    };
    std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
    auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, fn);
        return sub;
    };
    add_problem(add("check", "report submajorization and the finite condition", cmd_check));
    add_problem(add("realize", "construct U, V with diag(UTV) = A", cmd_realize));
    add_problem(add("schur-horn", "realize a real diagonal in the unitary orbit of self-adjoint T", cmd_schur_horn));
    auto* solve = add("solve", "dispatch on the problem file's \"mode\"", cmd_solve);
    add_problem(solve);
    solve->add_option("--resolutions", o.resolutions, "comma-separated powers of two");
    auto* conv = add("convergence", "residual table across resolutions (CSV)", cmd_convergence);
    add_problem(conv);
    conv->add_option("--resolutions", o.resolutions, "comma-separated powers of two");
    auto* suite = add("suite", "run the acceptance criteria", cmd_suite);
    suite->add_option("--seed", o.seed, "base seed");
    suite->add_option("--criteria", o.criteria, "criterion ids (default: all)")->delimiter(',');
    auto* gen = add("generate", "write a random problem file", cmd_generate);
    gen->add_option("--seed", o.seed, "seed");
    gen->add_option("--n", o.n, "dimension")->check(CLI::PositiveNumber);
    gen->add_option("--kind", o.kind, "expectation | spectral | boundary | infeasible");
    gen->add_option("--output", o.output, "output file (stdout if omitted)");
    gen->add_option("--strategy", o.strategy, "strategy recorded in the file");
    auto* verify = add("verify", "check |UTV - S| of a stored result", cmd_verify);
    add_problem(verify);
    verify->add_option("--result", o.result, "result file (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitMalformed;
    }

    try {
        for (const auto& [sub, fn] : commands)
            if (sub->parsed()) return fn(o);
    } catch (const MalformedInput& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const InfeasibleError& e) {
        std::cout << "infeasible: " << e.what() << "; margin=" << e.margin() << " at cell " << e.cell() << '\n';
        return kExitInfeasible;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitMalformed;
}
