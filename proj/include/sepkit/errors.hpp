#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotASeparator : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct InvalidPathSet : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct TooBig : Error { using Error::Error; };
struct InvalidBudget : Error { using Error::Error; };
struct EmptyDecomposition : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

struct ParseError : Error {
    int line;
    ParseError(int line_no, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

}  // namespace sepkit
