#pragma once

#include "gilliant/biabduce.hpp"
#include "gilliant/json_io.hpp"
#include "gilliant/soundness.hpp"
#include "gilliant/verify.hpp"

namespace gilliant {

/// Report builders shared by the CLI and the tests. Every report records the
/// seed and orders branches by discovery (trace id), so reruns are
/// bit-identical.
struct ReportMeta {
    std::string mode;
    std::string input;
    uint64_t seed = 0;
};

Json metaJson(const ReportMeta& meta);

Json execReport(const ReportMeta& meta, const RunResult<WhileConcreteModel>& run);
Json wpstReport(const ReportMeta& meta, const RunResult<WhileSymbolicModel>& run,
                const Solver& solver, size_t modelCount);
Json verifyReport(const ReportMeta& meta, const std::vector<VerificationResult>& results);
Json abduceReport(const ReportMeta& meta, const std::vector<std::pair<std::string, AbduceResult>>& results);
Json soundcheckReport(const ReportMeta& meta, const std::vector<DifferentialReport>& reports);

/// Validates a JSON document against the subset of JSON Schema the shipped
/// schemas use: type, properties, required, items, enum. Returns problems;
/// empty means valid.
std::vector<std::string> miniValidate(const Json& doc, const Json& schema,
                                      const std::string& where = "$");

}  // namespace gilliant
