#pragma once

// Reference big-step WHILE interpreter, independent of the compiler and the
// GIL engine. Used as the equivalence oracle for compile+exec.

#include "gilliant/alloc.hpp"
#include "gilliant/while_ast.hpp"
#include "gilliant/while_compile.hpp"

namespace gilliant::testing {

struct OracleOutcome {
    enum class Kind { Return, Fail, NoResult, Missing, Error, Budget };
    Kind kind = Kind::Error;
    GilValue value;
    std::string msg;
};

OracleOutcome oracleRun(const wl::WhileProgram& prog, const std::string& entry,
                        const GilValue& arg, size_t fuel = 200000);

}  // namespace gilliant::testing
