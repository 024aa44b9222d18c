// novikov: twisted cohomology of simplicial complexes with rank-1 local systems.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 input or usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "novikov/cohomology.hpp"
#include "novikov/error.hpp"
#include "novikov/io.hpp"
#include "novikov/models.hpp"
#include "novikov/pairs.hpp"
#include "novikov/theorem_checks.hpp"

using namespace novikov;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    bool json = false;
    bool quiet = false;
    std::uint64_t seed = 7;
    bool seed_given = false;
    bool no_timing = false;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

void emit_log(const Globals& g, const LoadLog& log) {
    if (g.quiet) return;
    for (const auto& line : log) std::cerr << "note: " << line << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void print_representatives(const CohomologyReport& r) {
    for (std::size_t p = 0; p < r.representatives.size(); ++p)
        for (std::size_t i = 0; i < r.representatives[p].size(); ++i)
            std::cout << "H^" << p << " rep " << i << ": " << cochain_json(r.representatives[p][i]).dump() << "\n";
}

int cmd_compute(const Globals& g, const std::string& complex_path, const std::string& system_path, bool reps) {
    auto t0 = std::chrono::steady_clock::now();
    LoadLog log;
    ComplexPtr c = parse_complex_json(read_text_file(complex_path), &log);
    LocalSystem s = system_path.empty() ? LocalSystem::trivial(c) : parse_system_json(read_text_file(system_path), c, &log);
    emit_log(g, log);
    CohomologyReport r = betti(c, s, reps);
    if (g.json) {
        std::cout << cohomology_report_json("compute", c->name().empty() ? complex_path : c->name(), r, reps,
                                           g.no_timing ? 0 : elapsed_ms(t0))
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "betti: " << join(r.betti) << "\n";
        if (reps) print_representatives(r);
    }
    return 0;
}

int cmd_relative(const Globals& g, const std::string& complex_path, const std::string& sub_path, const std::string& system_path,
                 bool reps) {
    auto t0 = std::chrono::steady_clock::now();
    LoadLog log;
    ComplexPtr c = parse_complex_json(read_text_file(complex_path), &log);
    Subcomplex z = parse_subcomplex_json(read_text_file(sub_path), c, &log);
    LocalSystem s = system_path.empty() ? LocalSystem::trivial(c) : parse_system_json(read_text_file(system_path), c, &log);
    emit_log(g, log);
    CohomologyReport r = relative_betti(c, z, s, reps);
    PairLES les = les_of_pair(c, z, s);
    if (g.json) {
        json j = cohomology_report_json("relative", c->name().empty() ? complex_path : c->name(), r, reps, 0);
        j.erase("seed");
        j.erase("wall_time_ms");
        j["absolute"] = les.absolute;
        j["subcomplex"] = les.sub;
        j["exact"] = les.exact();
        j["seed"] = nullptr;
        j["wall_time_ms"] = g.no_timing ? 0 : static_cast<std::int64_t>(elapsed_ms(t0));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "relative betti: " << join(r.betti) << "\n";
        std::cout << "absolute betti: " << join(les.absolute) << "\n";
        std::cout << "subcomplex betti: " << join(les.sub) << "\n";
        std::cout << "long exact sequence: " << (les.exact() ? "exact" : "NOT exact") << "\n";
        if (reps) print_representatives(r);
    }
    return 0;
}

int cmd_verify(const Globals& g, const std::string& suite, bool quick, bool keep_going) {
    if (!is_suite(suite)) {
        std::cerr << "error: unknown suite '" << suite << "' (expected one of: all";
        for (const auto& s : suite_names()) std::cerr << ", " << s;
        std::cerr << ")\n";
        return 2;
    }
    auto t0 = std::chrono::steady_clock::now();
    SuiteOptions opt;
    opt.seed = g.seed;
    opt.quick = quick;
    opt.stop_on_failure = !keep_going;
    auto reports = run_suite(suite, opt);
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.pass ? 1 : 0;
    bool ok = passed == reports.size();

    if (g.json) {
        json j;
        j["schema"] = 1;
        j["command"] = "verify";
        j["instance"] = suite;
        json checks = json::array();
        for (const auto& r : reports) checks.push_back(to_json(r, !g.no_timing));
        j["checks"] = std::move(checks);
        j["passed"] = passed;
        j["total"] = reports.size();
        j["seed"] = g.seed;
        j["wall_time_ms"] = g.no_timing ? 0 : static_cast<std::int64_t>(elapsed_ms(t0));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            if (g.quiet && r.pass) continue;
            std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.check << "  " << r.instance << "  expected " << join(r.expected)
                      << " computed " << join(r.computed) << "\n";
            if (!r.pass) std::cout << "witness: " << to_json(r, !g.no_timing).dump(2) << "\n";
        }
        std::cout << passed << "/" << reports.size() << " checks passed (seed " << g.seed << ")\n";
    }
    return ok ? 0 : 1;
}

std::vector<long> parse_params(const std::vector<std::string>& args) {
    std::vector<long> out;
    for (const auto& a : args) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(a, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != a.size() || a.empty()) throw Error(ErrorCode::BadParams, "model parameter '" + a + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

int cmd_models_list(const Globals& g) {
    json list = json::array();
    for (const auto& e : catalog()) {
        Model m = build_model(e.name);
        if (g.json) {
            list.push_back({{"name", e.name},
                            {"parameters", e.parameters},
                            {"default_parameters", e.default_parameters},
                            {"f_vector", m.complex->f_vector()},
                            {"euler", m.descriptor.expected_euler},
                            {"betti", m.descriptor.untwisted_betti},
                            {"description", e.description}});
        } else {
            std::string label = e.name + (e.parameters.empty() ? "" : "(" + e.parameters + ")");
            std::string defaults;
            for (long p : e.default_parameters) defaults += (defaults.empty() ? "" : ",") + std::to_string(p);
            std::cout << label << "  f = " << join(m.complex->f_vector()) << (defaults.empty() ? "" : "  [" + e.parameters + "=" + defaults + "]")
                      << "  " << e.description << "\n";
        }
    }
    if (g.json) std::cout << json{{"schema", 1}, {"command", "models"}, {"models", list}}.dump(2) << "\n";
    return 0;
}

int cmd_models_export(const Globals& g, const std::vector<std::string>& args) {
    if (args.size() < 2) {
        std::cerr << "error: usage: models export <name> [params...] <path>\n";
        return 2;
    }
    std::vector<std::string> params(args.begin() + 1, args.end() - 1);
    Model m = build_model(args.front(), parse_params(params));
    std::ofstream out(args.back());
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + args.back() + "'");
    json j = complex_to_json(*m.complex);
    out << j.dump(2) << "\n";
    if (!g.quiet) std::cerr << "wrote " << m.complex->name() << " to " << args.back() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted (Morse-Novikov) cohomology of simplicial complexes with rank-1 local systems"};
    app.require_subcommand(1);
    Globals g;
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_flag("--json", g.json, "emit a structured JSON report");
    app.add_flag("--quiet", g.quiet, "suppress notes and passing lines");
    app.add_flag("--no-timing", g.no_timing, "report wall_time_ms as 0 (byte-reproducible output)");

    std::string complex_path, system_path, sub_path, suite;
    bool reps = false, quick = false, keep_going = false;
    std::vector<std::string> export_args;

    auto* compute = app.add_subcommand("compute", "twisted Betti numbers of a complex file");
    compute->add_option("complex", complex_path, "ComplexFile (JSON)")->required();
    compute->add_option("--system", system_path, "SystemFile (JSON); default: trivial system");
    compute->add_flag("--representatives", reps, "include representative cocycles");

    auto* relative = app.add_subcommand("relative", "relative cohomology of a pair and its long exact sequence");
    relative->add_option("complex", complex_path, "ComplexFile (JSON)")->required();
    relative->add_option("--subcomplex", sub_path, "subcomplex selector file (JSON)")->required();
    relative->add_option("--system", system_path, "SystemFile (JSON); default: trivial system");
    relative->add_flag("--representatives", reps, "include representative cocycles");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "all, main-theorem, proj-bundle, gauge, les, coker-ladder, injectivity")->required();
    verify->add_flag("--quick", quick, "skip the largest instances");
    verify->add_flag("--keep-going", keep_going, "continue after a failed check");

    auto* models = app.add_subcommand("models", "built-in model catalog");
    models->require_subcommand(1);
    auto* list = models->add_subcommand("list", "list catalog models with f-vectors");
    auto* exp = models->add_subcommand("export", "write a model as a ComplexFile");
    exp->add_option("args", export_args, "<name> [params...] <path>")->required();

    for (auto* sub : {compute, relative, verify, models, list, exp}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (*compute) return cmd_compute(g, complex_path, system_path, reps);
        if (*relative) return cmd_relative(g, complex_path, sub_path, system_path, reps);
        if (*verify) return cmd_verify(g, suite, quick, keep_going);
        if (*list) return cmd_models_list(g);
        if (*exp) return cmd_models_export(g, export_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
