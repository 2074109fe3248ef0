#pragma once

#include <random>

#include "gilliant/while_ast.hpp"

namespace gilliant::wl {

struct FuzzOptions {
    int maxBlockStmts = 5;
    int maxDepth = 3;
    int maxObjects = 3;
    int maxLoopBound = 3;
    bool allowCalls = true;
    bool allowDispose = true;
    bool allowAssertFailures = true;
    /// Symbolic mode threads the (numeric) procedure argument into branch
    /// conditions and assumes, so whole-program symbolic runs fork.
    bool symbolicMode = false;
};

/// Grammar-directed WHILE generator. Object properties come from {a, b, c};
/// loops are counter-bounded. Deterministic in the seed.
WhileProgram fuzzProgram(uint64_t seed, const FuzzOptions& opts = {});

/// A single statement (for compiler-shape properties); in-scope variables are
/// x, y, z.
StmtPtr fuzzStmt(uint64_t seed, int maxDepth = 3);

}  // namespace gilliant::wl
