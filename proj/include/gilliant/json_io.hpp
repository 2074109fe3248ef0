#pragma once

#include <json.hpp>

#include "gilliant/assertions.hpp"

namespace gilliant {

using Json = nlohmann::json;

struct JsonError : std::runtime_error {
    explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

Json valueToJson(const GilValue& v);
Json exprToJson(const Expr& e);
Json commandToJson(const GilCommand& c);
Json assertionToJson(const Assertion& a);
Json programToJson(const AnnotatedProgram& prog);

GilValue valueFromJson(const Json& j);
Expr exprFromJson(const Json& j);
GilCommand commandFromJson(const Json& j);
Assertion assertionFromJson(const Json& j);
AnnotatedProgram programFromJson(const Json& j);

/// Read/write .gil.json files.
AnnotatedProgram loadProgram(const std::string& path);
void saveProgram(const AnnotatedProgram& prog, const std::string& path);

}  // namespace gilliant
