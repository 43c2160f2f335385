#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iotrisk {

enum class ErrorCode {
    DuplicateComponentId,
    DanglingEdgeEndpoint,
    SelfLoop,
    DuplicateEdge,
    UnknownComponent,
    EmptyGraph,
    EmptySeedSet,
    NotATree,
    InvalidArgument,
    OriginMismatch,
    InvalidAlpha,
    ZeroTrials,
    MissingScore,
    InvalidPolicy,
    UnknownAttributeValue,
    MissingAttribute,
    DanglingReference,
    SyntaxError,
    SchemaError,
    UnknownMetric,
};

std::string_view error_code_name(ErrorCode code);

// All failures raised by the library. `location` is a JSON pointer or
// "line L, column C" for document errors and empty otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string location = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }

private:
    ErrorCode code_;
    std::string location_;
};

}  // namespace iotrisk
