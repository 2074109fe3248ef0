#include "gilliant/json_io.hpp"

#include <fstream>

namespace gilliant {

namespace {

std::string rationalText(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational rationalFromText(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(s);
    return Rational(s.substr(0, slash)) / Rational(s.substr(slash + 1));
}

}  // namespace

Json valueToJson(const GilValue& v) {
    switch (v.kind()) {
        case TypeTag::Num:
            if (v.asNum().exact()) return Json{{"t", "num"}, {"v", rationalText(v.asNum().rat())}};
            return Json{{"t", "num"}, {"v", v.asNum().flt()}, {"float", true}};
        case TypeTag::Str: return Json{{"t", "str"}, {"v", v.asStr()}};
        case TypeTag::Bool: return Json{{"t", "bool"}, {"v", v.asBool()}};
        case TypeTag::Symb: return Json{{"t", "symb"}, {"v", v.symbolId()}};
        case TypeTag::Type: return Json{{"t", "type"}, {"v", typeTagName(v.asType())}};
        case TypeTag::Proc: return Json{{"t", "proc"}, {"v", v.procName()}};
        case TypeTag::List: {
            Json items = Json::array();
            for (const GilValue& x : v.asList()) items.push_back(valueToJson(x));
            return Json{{"t", "list"}, {"v", std::move(items)}};
        }
    }
    throw JsonError("unencodable value");
}

GilValue valueFromJson(const Json& j) {
    if (!j.is_object() || !j.contains("t")) throw JsonError("value: expected a tagged object");
    std::string t = j.at("t");
    if (t == "num") {
        if (j.value("float", false)) return GilValue::num(Number::fromDouble(j.at("v")));
        return GilValue::num(Number(rationalFromText(j.at("v"))));
    }
    if (t == "str") return GilValue::str(j.at("v"));
    if (t == "bool") return GilValue::boolean(j.at("v"));
    if (t == "symb") return GilValue::symbol(j.at("v"));
    if (t == "type") {
        auto tag = typeTagFromName(j.at("v"));
        if (!tag) throw JsonError("unknown type tag");
        return GilValue::typeTag(*tag);
    }
    if (t == "proc") return GilValue::proc(j.at("v"));
    if (t == "list") {
        GilValue::List xs;
        for (const Json& item : j.at("v")) xs.push_back(valueFromJson(item));
        return GilValue::list(std::move(xs));
    }
    throw JsonError("unknown value tag " + t);
}

Json exprToJson(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Lit: return Json{{"t", "lit"}, {"v", valueToJson(e.litVal())}};
        case Expr::Kind::PVar: return Json{{"t", "pvar"}, {"v", e.varName()}};
        case Expr::Kind::LVar: return Json{{"t", "lvar"}, {"v", e.varName()}};
        case Expr::Kind::UnOp:
            return Json{{"t", "unop"}, {"op", unOpName(e.unOp())}, {"e", exprToJson(e.arg())}};
        case Expr::Kind::BinOp:
            return Json{{"t", "binop"},
                        {"op", binOpName(e.binOp())},
                        {"l", exprToJson(e.lhs())},
                        {"r", exprToJson(e.rhs())}};
    }
    throw JsonError("unencodable expression");
}

Expr exprFromJson(const Json& j) {
    std::string t = j.at("t");
    if (t == "lit") return Expr::lit(valueFromJson(j.at("v")));
    if (t == "pvar") return Expr::pvar(j.at("v"));
    if (t == "lvar") return Expr::lvar(j.at("v"));
    if (t == "unop") {
        auto op = unOpFromName(j.at("op"));
        if (!op) throw JsonError("unknown unary operator");
        return Expr::unop(*op, exprFromJson(j.at("e")));
    }
    if (t == "binop") {
        auto op = binOpFromName(j.at("op"));
        if (!op) throw JsonError("unknown binary operator");
        return Expr::binop(*op, exprFromJson(j.at("l")), exprFromJson(j.at("r")));
    }
    throw JsonError("unknown expression tag " + t);
}

namespace {

Json bindingsToJson(const std::vector<std::pair<std::string, Expr>>& binds) {
    Json out = Json::array();
    for (const auto& [lv, e] : binds) out.push_back(Json{{"lvar", lv}, {"e", exprToJson(e)}});
    return out;
}

std::vector<std::pair<std::string, Expr>> bindingsFromJson(const Json& j) {
    std::vector<std::pair<std::string, Expr>> out;
    for (const Json& b : j) out.emplace_back(b.at("lvar"), exprFromJson(b.at("e")));
    return out;
}

}  // namespace

Json commandToJson(const GilCommand& c) {
    using K = GilCommand::Kind;
    switch (c.kind) {
        case K::Assign: return Json{{"t", "assign"}, {"x", c.x}, {"e", exprToJson(c.e)}};
        case K::IfGoto: return Json{{"t", "ifgoto"}, {"e", exprToJson(c.e)}, {"i", c.target}};
        case K::Call:
            return Json{{"t", "call"}, {"x", c.x}, {"fn", exprToJson(c.e)}, {"arg", exprToJson(c.e2)}};
        case K::Action:
            return Json{{"t", "action"}, {"x", c.x}, {"act", c.action}, {"e", exprToJson(c.e)}};
        case K::Symb: return Json{{"t", "symb"}, {"x", c.x}, {"site", c.site}};
        case K::Fresh: return Json{{"t", "fresh"}, {"x", c.x}, {"site", c.site}};
        case K::Return: return Json{{"t", "return"}, {"e", exprToJson(c.e)}};
        case K::Fail: return Json{{"t", "fail"}, {"e", exprToJson(c.e)}};
        case K::Vanish: return Json{{"t", "vanish"}};
        case K::Fold:
            return Json{{"t", "fold"},
                        {"pred", c.pred},
                        {"e", exprToJson(c.e)},
                        {"def", c.index},
                        {"binds", bindingsToJson(c.bindings)}};
        case K::Unfold: return Json{{"t", "unfold"}, {"pred", c.pred}, {"e", exprToJson(c.e)}};
        case K::SpecCall:
            return Json{{"t", "speccall"}, {"x", c.x},           {"fn", exprToJson(c.e)},
                        {"arg", exprToJson(c.e2)}, {"spec", c.index}, {"binds", bindingsToJson(c.bindings)}};
    }
    throw JsonError("unencodable command");
}

GilCommand commandFromJson(const Json& j) {
    std::string t = j.at("t");
    if (t == "assign") return GilCommand::assign(j.at("x"), exprFromJson(j.at("e")));
    if (t == "ifgoto") return GilCommand::ifgoto(exprFromJson(j.at("e")), j.at("i"));
    if (t == "call")
        return GilCommand::call(j.at("x"), exprFromJson(j.at("fn")), exprFromJson(j.at("arg")));
    if (t == "action")
        return GilCommand::actionCmd(j.at("x"), j.at("act"), exprFromJson(j.at("e")));
    if (t == "symb") return GilCommand::symb(j.at("x"), j.at("site"));
    if (t == "fresh") return GilCommand::fresh(j.at("x"), j.at("site"));
    if (t == "return") return GilCommand::ret(exprFromJson(j.at("e")));
    if (t == "fail") return GilCommand::fail(exprFromJson(j.at("e")));
    if (t == "vanish") return GilCommand::vanish();
    if (t == "fold")
        return GilCommand::fold(j.at("pred"), exprFromJson(j.at("e")), j.at("def"),
                                bindingsFromJson(j.at("binds")));
    if (t == "unfold") return GilCommand::unfold(j.at("pred"), exprFromJson(j.at("e")));
    if (t == "speccall")
        return GilCommand::specCall(j.at("x"), exprFromJson(j.at("fn")), exprFromJson(j.at("arg")),
                                    j.at("spec"), bindingsFromJson(j.at("binds")));
    throw JsonError("unknown command tag " + t);
}

Json assertionToJson(const Assertion& a) {
    switch (a.kind()) {
        case Assertion::Kind::Emp: return Json{{"t", "emp"}};
        case Assertion::Kind::Pure: return Json{{"t", "pure"}, {"e", exprToJson(a.expr())}};
        case Assertion::Kind::CorePred:
            return Json{{"t", "core"}, {"pred", a.pred()}, {"e", exprToJson(a.expr())}};
        case Assertion::Kind::UserPred:
            return Json{{"t", "user"}, {"pred", a.pred()}, {"e", exprToJson(a.expr())}};
        case Assertion::Kind::Star:
            return Json{{"t", "star"}, {"l", assertionToJson(a.lhs())}, {"r", assertionToJson(a.rhs())}};
    }
    throw JsonError("unencodable assertion");
}

Assertion assertionFromJson(const Json& j) {
    std::string t = j.at("t");
    if (t == "emp") return Assertion::emp();
    if (t == "pure") return Assertion::pure(exprFromJson(j.at("e")));
    if (t == "core") return Assertion::core(j.at("pred"), exprFromJson(j.at("e")));
    if (t == "user") return Assertion::user(j.at("pred"), exprFromJson(j.at("e")));
    if (t == "star")
        return Assertion::star(assertionFromJson(j.at("l")), assertionFromJson(j.at("r")));
    throw JsonError("unknown assertion tag " + t);
}

Json programToJson(const AnnotatedProgram& prog) {
    Json procs = Json::object();
    for (const auto& [name, p] : prog.prog.procs) {
        Json body = Json::array();
        for (const GilCommand& c : p.body) body.push_back(commandToJson(c));
        procs[name] = Json{{"name", p.name}, {"param", p.param}, {"body", std::move(body)}};
    }
    Json preds = Json::object();
    for (const auto& [name, def] : prog.predicates) {
        Json defs = Json::array();
        for (const Assertion& a : def.defs) defs.push_back(assertionToJson(a));
        preds[name] = Json{{"name", def.name}, {"param", def.param}, {"defs", std::move(defs)}};
    }
    Json specs = Json::object();
    for (const auto& [name, list] : prog.specs) {
        Json arr = Json::array();
        for (const Spec& sp : list)
            arr.push_back(Json{{"pre", assertionToJson(sp.pre)},
                               {"proc", sp.proc},
                               {"param", sp.param},
                               {"post", assertionToJson(sp.post)},
                               {"ret", exprToJson(sp.ret)}});
        specs[name] = std::move(arr);
    }
    return Json{{"procs", std::move(procs)}, {"predicates", std::move(preds)}, {"specs", std::move(specs)}};
}

AnnotatedProgram programFromJson(const Json& j) {
    AnnotatedProgram out;
    if (!j.is_object() || !j.contains("procs")) throw JsonError("program: expected {procs: ...}");
    for (const auto& [name, pj] : j.at("procs").items()) {
        GilProc p;
        p.name = pj.at("name");
        p.param = pj.at("param");
        for (const Json& cj : pj.at("body")) p.body.push_back(commandFromJson(cj));
        out.prog.procs[name] = std::move(p);
    }
    if (j.contains("predicates")) {
        for (const auto& [name, dj] : j.at("predicates").items()) {
            PredicateDef def;
            def.name = dj.at("name");
            def.param = dj.at("param");
            for (const Json& aj : dj.at("defs")) def.defs.push_back(assertionFromJson(aj));
            out.predicates[name] = std::move(def);
        }
    }
    if (j.contains("specs")) {
        for (const auto& [name, arr] : j.at("specs").items()) {
            for (const Json& sj : arr) {
                Spec sp;
                sp.pre = assertionFromJson(sj.at("pre"));
                sp.proc = sj.at("proc");
                sp.param = sj.at("param");
                sp.post = assertionFromJson(sj.at("post"));
                sp.ret = exprFromJson(sj.at("ret"));
                out.specs[name].push_back(std::move(sp));
            }
        }
    }
    return out;
}

AnnotatedProgram loadProgram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw JsonError(path + ": " + e.what());
    }
    return programFromJson(j);
}

void saveProgram(const AnnotatedProgram& prog, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw JsonError("cannot open " + path + " for writing");
    out << programToJson(prog).dump(2) << "\n";
}

}  // namespace gilliant
