#pragma once

#include <stdexcept>
#include <string>

namespace tempex {

enum class ErrorCode {
    NotSpanning,
    SelfLoop,
    DuplicateEdge,
    VertexOutOfRange,
    EmptyCatalog,
    ZeroMass,
    DuplicateTree,
    MixedVertexCounts,
    InvalidRange,
    WindowTooShort,
    SourceNotInContext,
    ContextFull,
    Disconnected,
    TooManyTrees,
    TooLarge,
    BadK,
    BadN,
    BadParams,
    HorizonExceeded,
    PolicyIllegalMove,
    NotAStarSnapshot,
    NotLadderModel,
    SequenceTooShort,
    DegenerateRange,
    ParseError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotSpanning: return "NotSpanning";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::EmptyCatalog: return "EmptyCatalog";
        case ErrorCode::ZeroMass: return "ZeroMass";
        case ErrorCode::DuplicateTree: return "DuplicateTree";
        case ErrorCode::MixedVertexCounts: return "MixedVertexCounts";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::SourceNotInContext: return "SourceNotInContext";
        case ErrorCode::ContextFull: return "ContextFull";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::TooManyTrees: return "TooManyTrees";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::BadN: return "BadN";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::HorizonExceeded: return "HorizonExceeded";
        case ErrorCode::PolicyIllegalMove: return "PolicyIllegalMove";
        case ErrorCode::NotAStarSnapshot: return "NotAStarSnapshot";
        case ErrorCode::NotLadderModel: return "NotLadderModel";
        case ErrorCode::SequenceTooShort: return "SequenceTooShort";
        case ErrorCode::DegenerateRange: return "DegenerateRange";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Domain error carrying a stable error code; the CLI maps these to exit status 1.
class TempexError : public std::runtime_error {
public:
    TempexError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw TempexError(code, what);
}

}  // namespace tempex
