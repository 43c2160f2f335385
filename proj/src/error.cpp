#include "iotrisk/error.hpp"

namespace iotrisk {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateComponentId: return "DuplicateComponentId";
    case ErrorCode::DanglingEdgeEndpoint: return "DanglingEdgeEndpoint";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::EmptySeedSet: return "EmptySeedSet";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OriginMismatch: return "OriginMismatch";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::ZeroTrials: return "ZeroTrials";
    case ErrorCode::MissingScore: return "MissingScore";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::UnknownAttributeValue: return "UnknownAttributeValue";
    case ErrorCode::MissingAttribute: return "MissingAttribute";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownMetric: return "UnknownMetric";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, const std::string& location) {
    std::string text{error_code_name(code)};
    if (!location.empty()) {
        text += " at " + location;
    }
    text += ": " + message;
    return text;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string location)
    : std::runtime_error(compose(code, message, location)), code_(code), location_(std::move(location)) {}

}  // namespace iotrisk
