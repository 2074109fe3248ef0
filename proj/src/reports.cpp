#include "gilliant/reports.hpp"

namespace gilliant {

Json metaJson(const ReportMeta& meta) {
    return Json{{"mode", meta.mode}, {"input", meta.input}, {"seed", meta.seed}};
}

namespace {

Json traceJson(const std::shared_ptr<const TraceNode>& tip) {
    Json out = Json::array();
    for (const std::string& line : materializeTrace(tip)) out.push_back(line);
    return out;
}

template <typename M>
const char* outcomeName(const Outcome<typename M::Value>& o) {
    switch (o.kind) {
        case Outcome<typename M::Value>::Kind::Return: return "return";
        case Outcome<typename M::Value>::Kind::Fail: return "fail";
        default: return "continue";
    }
}

}  // namespace

Json execReport(const ReportMeta& meta, const RunResult<WhileConcreteModel>& run) {
    Json branches = Json::array();
    int id = 0;
    for (const auto& fin : run.finals) {
        branches.push_back(Json{{"id", id++},
                                {"outcome", outcomeName<WhileConcreteModel>(fin.outcome)},
                                {"value", fin.outcome.value.show()},
                                {"trace", traceJson(fin.trace)}});
    }
    Json issues = Json::array();
    for (const auto& issue : run.issues)
        issues.push_back(Json{{"kind", issue.kind == BranchIssue<WhileConcreteModel>::Kind::Budget
                                           ? "budget"
                                           : (issue.kind == BranchIssue<WhileConcreteModel>::Kind::Unroll
                                                  ? "unroll"
                                                  : "error")},
                              {"message", issue.message},
                              {"trace", traceJson(issue.cfg.trace)}});
    return Json{{"meta", metaJson(meta)}, {"branches", std::move(branches)},
                {"issues", std::move(issues)}};
}

Json wpstReport(const ReportMeta& meta, const RunResult<WhileSymbolicModel>& run,
                const Solver& solver, size_t modelCount) {
    Json branches = Json::array();
    int id = 0;
    for (const auto& fin : run.finals) {
        Json b{{"id", id++},
               {"outcome", outcomeName<WhileSymbolicModel>(fin.outcome)},
               {"value", simplify(fin.outcome.value).show()},
               {"pc", showPc(fin.state.pc)},
               {"trace", traceJson(fin.trace)}};
        if (fin.outcome.kind == Outcome<Expr>::Kind::Fail) {
            std::set<std::string> vars = pcFreeLVars(fin.state.pc);
            fin.outcome.value.collectLVars(vars);
            Json witnesses = Json::array();
            for (const LogicalEnv& env : solver.sampleModels(fin.state.pc, vars, modelCount)) {
                Json w = Json::object();
                for (const auto& [k, v] : env) w[k] = v.show();
                witnesses.push_back(std::move(w));
            }
            b["witnesses"] = std::move(witnesses);
        }
        branches.push_back(std::move(b));
    }
    Json issues = Json::array();
    for (const auto& issue : run.issues)
        issues.push_back(Json{{"kind", issue.kind == BranchIssue<WhileSymbolicModel>::Kind::Budget
                                           ? "budget"
                                           : (issue.kind == BranchIssue<WhileSymbolicModel>::Kind::Unroll
                                                  ? "unroll"
                                                  : "error")},
                              {"message", issue.message},
                              {"trace", traceJson(issue.cfg.trace)}});
    bool anyFail = false;
    for (const auto& fin : run.finals)
        if (fin.outcome.kind == Outcome<Expr>::Kind::Fail) anyFail = true;
    return Json{{"meta", metaJson(meta)},
                {"branches", std::move(branches)},
                {"issues", std::move(issues)},
                {"failing", anyFail}};
}

Json verifyReport(const ReportMeta& meta, const std::vector<VerificationResult>& results) {
    Json specs = Json::array();
    for (const auto& r : results) {
        Json issues = Json::array();
        for (const auto& issue : r.issues) {
            const char* kind = "branch-failed";
            if (issue.kind == VerifyIssue::Kind::PostConsumeFailed) kind = "post-consume-failed";
            if (issue.kind == VerifyIssue::Kind::BudgetExceeded) kind = "budget-exceeded";
            if (issue.kind == VerifyIssue::Kind::UnknownAnnotation) kind = "unknown-annotation";
            Json tr = Json::array();
            for (const auto& t : issue.trace) tr.push_back(t);
            issues.push_back(Json{{"kind", kind}, {"message", issue.message}, {"trace", tr}});
        }
        specs.push_back(Json{{"proc", r.proc},
                             {"spec", r.specIndex},
                             {"status", r.verified ? "verified" : "failed"},
                             {"branches", r.branchesDischarged},
                             {"issues", std::move(issues)}});
    }
    return Json{{"meta", metaJson(meta)}, {"specs", std::move(specs)}};
}

Json abduceReport(const ReportMeta& meta,
                  const std::vector<std::pair<std::string, AbduceResult>>& results) {
    Json procs = Json::array();
    for (const auto& [name, res] : results) {
        Json specs = Json::array();
        for (const auto& sp : res.specs) {
            Json tr = Json::array();
            for (const auto& t : sp.trace) tr.push_back(t);
            specs.push_back(Json{{"kind", sp.kind == SynthesizedSpec::Kind::Success
                                              ? "success"
                                              : "bug-candidate"},
                                 {"pre", assertionToJson(sp.pre)},
                                 {"post", assertionToJson(sp.post)},
                                 {"ret", exprToJson(sp.ret)},
                                 {"pretty", sp.show()},
                                 {"note", sp.note},
                                 {"trace", std::move(tr)}});
        }
        Json notes = Json::array();
        for (const auto& n : res.notes) notes.push_back(n);
        procs.push_back(Json{{"proc", name}, {"specs", std::move(specs)}, {"notes", std::move(notes)}});
    }
    return Json{{"meta", metaJson(meta)}, {"procs", std::move(procs)}};
}

Json soundcheckReport(const ReportMeta& meta, const std::vector<DifferentialReport>& reports) {
    Json entries = Json::array();
    bool sound = true;
    for (const auto& r : reports) {
        Json ces = Json::array();
        for (const auto& c : r.counterexamples) ces.push_back(c);
        Json notes = Json::array();
        for (const auto& n : r.notes) notes.push_back(n);
        if (!r.sound()) sound = false;
        entries.push_back(Json{{"entry", r.entry},
                               {"symbolicBranches", r.symbolicBranches},
                               {"branchesChecked", r.branchesChecked},
                               {"witnessesChecked", r.witnessesChecked},
                               {"passes", r.passes},
                               {"counterexamples", std::move(ces)},
                               {"notes", std::move(notes)}});
    }
    return Json{{"meta", metaJson(meta)}, {"entries", std::move(entries)}, {"sound", sound}};
}

std::vector<std::string> miniValidate(const Json& doc, const Json& schema,
                                      const std::string& where) {
    std::vector<std::string> out;
    if (schema.contains("type")) {
        std::string t = schema.at("type");
        bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                  (t == "string" && doc.is_string()) ||
                  (t == "number" && (doc.is_number() || doc.is_number_integer())) ||
                  (t == "integer" && doc.is_number_integer()) ||
                  (t == "boolean" && doc.is_boolean());
        if (!ok) {
            out.push_back(where + ": expected " + t);
            return out;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const Json& v : schema.at("enum"))
            if (v == doc) found = true;
        if (!found) out.push_back(where + ": value not in enum");
    }
    if (schema.contains("required")) {
        for (const Json& k : schema.at("required"))
            if (!doc.contains(k.get<std::string>()))
                out.push_back(where + ": missing required key " + k.get<std::string>());
    }
    if (schema.contains("properties") && doc.is_object()) {
        for (const auto& [key, sub] : schema.at("properties").items())
            if (doc.contains(key)) {
                auto subProblems = miniValidate(doc.at(key), sub, where + "." + key);
                out.insert(out.end(), subProblems.begin(), subProblems.end());
            }
    }
    if (schema.contains("items") && doc.is_array()) {
        size_t i = 0;
        for (const Json& item : doc) {
            auto subProblems =
                miniValidate(item, schema.at("items"), where + "[" + std::to_string(i++) + "]");
            out.insert(out.end(), subProblems.begin(), subProblems.end());
        }
    }
    return out;
}

}  // namespace gilliant
