// gilliant: compile WHILE programs to GIL and run the analyses over them.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "gilliant/reports.hpp"
#include "gilliant/while_compile.hpp"
#include "gilliant/while_parse.hpp"

using namespace gilliant;

namespace {

struct Options {
    std::string input;
    std::string output;
    std::string entry;
    std::string argText = "0";
    std::string smtPath;
    std::string jsonOut;
    size_t budget = 20000;
    int unroll = -1;
    size_t models = 5;
    uint64_t seed = 0;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool endsWith(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

AnnotatedProgram loadInput(const std::string& path) {
    if (endsWith(path, ".json")) return loadProgram(path);
    wl::WhileCompiler compiler;
    AnnotatedProgram prog = compiler.compileProgram(wl::parseWhile(readFile(path)));
    auto problems = validateProgram(prog.prog);
    if (!problems.empty()) {
        std::string msg = "malformed program:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw std::runtime_error(msg);
    }
    return prog;
}

std::vector<std::string> pickEntries(const AnnotatedProgram& prog, const Options& opt,
                                     const char* fallback) {
    if (!opt.entry.empty()) {
        if (!prog.prog.find(opt.entry))
            throw std::runtime_error("no procedure named " + opt.entry);
        return {opt.entry};
    }
    std::vector<std::string> tests;
    for (const auto& [name, _] : prog.prog.procs)
        if (name.rfind("test", 0) == 0) tests.push_back(name);
    if (!tests.empty()) return tests;
    if (prog.prog.find(fallback)) return {fallback};
    throw std::runtime_error(std::string("no --entry given and no test procedures or '") +
                             fallback + "' found");
}

void writeReport(const Options& opt, const Json& report) {
    if (opt.jsonOut.empty()) return;
    std::ofstream out(opt.jsonOut);
    if (!out) throw std::runtime_error("cannot write " + opt.jsonOut);
    out << report.dump(2) << "\n";
}

RunLimits limitsOf(const Options& opt) {
    RunLimits lim;
    lim.stepBudget = opt.budget;
    lim.unroll = opt.unroll;
    return lim;
}

int cmdCompile(const Options& opt) {
    wl::WhileCompiler compiler;
    AnnotatedProgram prog = compiler.compileProgram(wl::parseWhile(readFile(opt.input)));
    auto problems = validateProgram(prog.prog);
    if (!problems.empty()) {
        for (const auto& p : problems) std::cerr << "error: " << p << "\n";
        return 2;
    }
    std::string out = opt.output.empty() ? (opt.input + ".gil.json") : opt.output;
    saveProgram(prog, out);
    std::cout << "compiled " << prog.prog.procs.size() << " procedure(s) to " << out << "\n";
    return 0;
}

int cmdExec(const Options& opt) {
    AnnotatedProgram prog = loadInput(opt.input);
    std::string entry = opt.entry.empty() ? "main" : opt.entry;
    if (!prog.prog.find(entry)) throw std::runtime_error("no procedure named " + entry);

    Expr argExpr = wl::parseWhileExpr(opt.argText);
    auto argVal = evalClosed(argExpr);
    if (!argVal) throw std::runtime_error("--arg does not denote a closed value");

    WhileConcreteModel model;
    auto run = gilliant::run(model, prog.prog, entry, {}, *argVal, limitsOf(opt));

    ReportMeta meta{"exec", opt.input, opt.seed};
    writeReport(opt, execReport(meta, run));

    bool bad = false;
    for (const auto& fin : run.finals) {
        bool fail = fin.outcome.kind == Outcome<GilValue>::Kind::Fail;
        if (fail) bad = true;
        std::cout << (fail ? "fail: " : "return: ") << fin.outcome.value.show() << "\n";
    }
    for (const auto& issue : run.issues) {
        bad = true;
        std::cout << "error: " << issue.message << "\n";
    }
    if (run.finals.empty() && run.issues.empty())
        std::cout << "no result (every branch was cut)\n";
    return bad ? 1 : 0;
}

int cmdWpst(const Options& opt) {
    AnnotatedProgram prog = loadInput(opt.input);
    Solver solver(opt.smtPath);
    bool anyFail = false;
    Json combined = Json::array();
    for (const std::string& entry : pickEntries(prog, opt, "main")) {
        WhileSymbolicModel model(solver);
        WhileSymbolicState init;
        const GilProc* proc = prog.prog.find(entry);
        init.store.emplace(proc->param, Expr::lvar("#" + proc->param));
        auto cfg = initialConfig<WhileSymbolicModel>(prog.prog, entry, init);
        auto run = runWith(model, cfg, limitsOf(opt),
                           [](const WhileSymbolicModel& m, const Config<WhileSymbolicModel>& c) {
                               return step(m, c);
                           });

        std::cout << entry << ":\n";
        int id = 0;
        for (const auto& fin : run.finals) {
            bool fail = fin.outcome.kind == Outcome<Expr>::Kind::Fail;
            if (fail) anyFail = true;
            std::cout << "  branch " << id++ << " " << (fail ? "FAIL" : "return") << " "
                      << simplify(fin.outcome.value).show() << "  [pc: " << showPc(fin.state.pc)
                      << "]\n";
            if (fail) {
                std::set<std::string> vars = pcFreeLVars(fin.state.pc);
                auto ms = solver.sampleModels(fin.state.pc, vars, 1);
                if (!ms.empty()) {
                    std::cout << "    witness:";
                    for (const auto& [k, v] : ms[0]) std::cout << " " << k << "=" << v.show();
                    std::cout << "\n";
                }
            }
        }
        for (const auto& issue : run.issues) {
            anyFail = true;
            std::cout << "  error: " << issue.message << "\n";
        }
        ReportMeta meta{"wpst", opt.input + ":" + entry, opt.seed};
        combined.push_back(wpstReport(meta, run, solver, opt.models));
    }
    if (!opt.jsonOut.empty()) {
        std::ofstream out(opt.jsonOut);
        out << Json{{"reports", combined}}.dump(2) << "\n";
    }
    return anyFail ? 1 : 0;
}

int cmdVerify(const Options& opt) {
    AnnotatedProgram prog = loadInput(opt.input);
    Solver solver(opt.smtPath);
    Verifier verifier(prog, solver, limitsOf(opt));
    std::vector<VerificationResult> results;
    if (!opt.entry.empty()) {
        const auto it = prog.specs.find(opt.entry);
        if (it == prog.specs.end()) throw std::runtime_error("no specs for " + opt.entry);
        for (size_t i = 0; i < it->second.size(); ++i)
            results.push_back(verifier.verifyProc(opt.entry, static_cast<int>(i)));
    } else {
        results = verifier.verifyAll();
    }
    bool anyFailed = false;
    for (const auto& r : results) {
        std::cout << r.statusLine() << "\n";
        if (!r.verified) {
            anyFailed = true;
            for (const auto& issue : r.issues) std::cout << "  " << issue.message << "\n";
        }
    }
    ReportMeta meta{"verify", opt.input, opt.seed};
    writeReport(opt, verifyReport(meta, results));
    return anyFailed ? 1 : 0;
}

int cmdAbduce(const Options& opt) {
    AnnotatedProgram prog = loadInput(opt.input);
    Solver solver(opt.smtPath);
    std::vector<std::pair<std::string, AbduceResult>> results;
    std::vector<std::string> procs;
    if (!opt.entry.empty()) {
        procs.push_back(opt.entry);
    } else {
        for (const auto& [name, _] : prog.prog.procs) procs.push_back(name);
    }
    for (const std::string& name : procs) {
        auto res = abduceProc(prog, name, solver, limitsOf(opt));
        std::cout << name << ": " << res.specs.size() << " spec(s)\n";
        for (const auto& sp : res.specs) std::cout << "  " << sp.show() << "\n";
        for (const auto& n : res.notes) std::cout << "  note: " << n << "\n";
        results.emplace_back(name, std::move(res));
    }
    ReportMeta meta{"abduce", opt.input, opt.seed};
    writeReport(opt, abduceReport(meta, results));
    return 0;
}

int cmdSoundcheck(const Options& opt) {
    AnnotatedProgram prog = loadInput(opt.input);
    Solver solver(opt.smtPath);
    std::vector<DifferentialReport> reports;
    bool anyCounterexample = false;
    for (const std::string& entry : pickEntries(prog, opt, "main")) {
        auto report = differentialCheck(prog, entry, opt.models, limitsOf(opt), solver);
        std::cout << entry << ": " << report.passes << "/" << report.witnessesChecked
                  << " witnesses pass, " << report.counterexamples.size()
                  << " counterexample(s)\n";
        for (const auto& ce : report.counterexamples)
            std::cout << "  COUNTEREXAMPLE: " << ce << "\n";
        if (!report.sound()) anyCounterexample = true;
        reports.push_back(std::move(report));
    }
    ReportMeta meta{"soundcheck", opt.input, opt.seed};
    writeReport(opt, soundcheckReport(meta, reports));
    return anyCounterexample ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GIL toolchain: symbolic testing, verification, and bi-abduction for WHILE"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("GILLIANT_SMT")) opt.smtPath = env;

    auto addCommon = [&opt](CLI::App* sub) {
        sub->add_option("input", opt.input, "input .wl or .gil.json file")->required();
        sub->add_option("--budget", opt.budget, "per-branch step budget");
        sub->add_option("--unroll", opt.unroll, "per-branch loop unroll bound (-1: unbounded)");
        sub->add_option("--models", opt.models, "model samples per branch");
        sub->add_option("--smt", opt.smtPath, "external SMT-LIB2 solver command");
        sub->add_option("--seed", opt.seed, "seed recorded in reports");
        sub->add_option("--json", opt.jsonOut, "write a JSON report here");
        sub->add_option("--entry", opt.entry, "procedure to analyse");
    };

    CLI::App* compile = app.add_subcommand("compile", "compile a .wl file to .gil.json");
    compile->add_option("input", opt.input, "input .wl file")->required();
    compile->add_option("-o,--output", opt.output, "output path");

    CLI::App* exec = app.add_subcommand("exec", "run a program concretely");
    addCommon(exec);
    exec->add_option("--arg", opt.argText, "argument value (WHILE literal)");

    addCommon(app.add_subcommand("wpst", "whole-program symbolic testing"));
    addCommon(app.add_subcommand("verify", "check separation-logic specifications"));
    addCommon(app.add_subcommand("abduce", "synthesize specifications bi-abductively"));
    addCommon(app.add_subcommand("soundcheck", "differential concrete-vs-symbolic testing"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("compile")) return cmdCompile(opt);
        if (app.got_subcommand("exec")) return cmdExec(opt);
        if (app.got_subcommand("wpst")) return cmdWpst(opt);
        if (app.got_subcommand("verify")) return cmdVerify(opt);
        if (app.got_subcommand("abduce")) return cmdAbduce(opt);
        if (app.got_subcommand("soundcheck")) return cmdSoundcheck(opt);
    } catch (const wl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
