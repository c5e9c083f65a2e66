#pragma once

#include <stdexcept>
#include <string>

namespace wsnloc {

enum class ErrorCode {
    InvalidArgument,
    InvalidConfig,
    Unlocalizable,
    NotNeighbors,
    InsufficientAnchors,
    EmptyNeighborhood,
    NoEstimates,
    ParseError,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace wsnloc
