#pragma once

#include "gilliant/while_ast.hpp"

namespace gilliant::wl {

struct CompiledStmt {
    std::vector<GilCommand> cmds;
    int next;  // first free label; cmds occupy pc0 .. next-1
};

/// Statement-by-statement compiler to GIL. Labels are contiguous: compiling
/// at pc0 emits commands addressable as pc0 .. next-1 with every intra-block
/// goto target in [pc0, next]. Allocation sites for `new` are drawn from the
/// compiler's counter, so sites are jointly unique across a program.
class WhileCompiler {
public:
    CompiledStmt compileStmt(const WhileStmt& s, int pc0);

    /// Compile every procedure (a trailing `return 0` is appended so control
    /// cannot fall off the end) and carry the annotations over.
    AnnotatedProgram compileProgram(const WhileProgram& wp);

    int sitesUsed() const { return siteCounter_; }

private:
    int siteCounter_ = 0;
};

/// Site ids in AST order, matching what compileProgram assigns. The concrete
/// big-step oracle uses this to mirror the compiled allocator's names.
std::map<const WhileStmt*, int> assignSites(const WhileProgram& wp);

}  // namespace gilliant::wl
