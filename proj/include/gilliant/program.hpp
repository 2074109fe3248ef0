#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gilliant/expr.hpp"

namespace gilliant {

/// One GIL command. A flat tagged struct: the alternative fields are only
/// meaningful for their kind. Fold/Unfold/SpecCall are the verification-mode
/// extensions; the plain interpreter refuses them.
struct GilCommand {
    enum class Kind {
        Assign,
        IfGoto,
        Call,
        Action,
        Symb,
        Fresh,
        Return,
        Fail,
        Vanish,
        Fold,
        Unfold,
        SpecCall
    };

    Kind kind = Kind::Vanish;
    std::string x;       // assignment target
    Expr e;              // main expression (condition, argument, return value, ...)
    Expr e2;             // call argument
    int target = 0;      // ifgoto destination
    std::string action;  // action name
    int site = 0;        // allocation site (symb/fresh)
    std::string pred;    // fold/unfold predicate
    int index = 0;       // fold definition index / spec index
    std::vector<std::pair<std::string, Expr>> bindings;  // fold/speccall logical bindings

    static GilCommand assign(std::string x, Expr e);
    static GilCommand ifgoto(Expr e, int target);
    static GilCommand call(std::string x, Expr fn, Expr arg);
    static GilCommand actionCmd(std::string x, std::string action, Expr e);
    static GilCommand symb(std::string x, int site);
    static GilCommand fresh(std::string x, int site);
    static GilCommand ret(Expr e);
    static GilCommand fail(Expr e);
    static GilCommand vanish();
    static GilCommand fold(std::string pred, Expr e, int defIndex,
                           std::vector<std::pair<std::string, Expr>> bindings);
    static GilCommand unfold(std::string pred, Expr e);
    static GilCommand specCall(std::string x, Expr fn, Expr arg, int specIndex,
                               std::vector<std::pair<std::string, Expr>> bindings);

    bool isLogical() const {
        return kind == Kind::Fold || kind == Kind::Unfold || kind == Kind::SpecCall;
    }

    bool operator==(const GilCommand& o) const;
    std::string show() const;
};

struct GilProc {
    std::string name;
    std::string param;
    std::vector<GilCommand> body;

    std::string show() const;
};

struct GilProgram {
    std::map<std::string, GilProc> procs;

    const GilProc* find(const std::string& name) const {
        auto it = procs.find(name);
        return it == procs.end() ? nullptr : &it->second;
    }
    std::string show() const;
};

/// Static well-formedness: goto targets in range, literal call targets
/// resolvable, allocation sites jointly unique. Returns diagnostics; empty
/// means well-formed.
std::vector<std::string> validateProgram(const GilProgram& prog);

struct EngineError : std::runtime_error {
    enum class Kind {
        ExprEval,
        MissingProc,
        BadTarget,
        LogicalCmd,
        MissingResource,
        Unfixable,
        UnknownPredicate,
        UnknownSpec,
        Internal
    };
    Kind kind;
    EngineError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

}  // namespace gilliant
