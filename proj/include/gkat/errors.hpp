#ifndef GKAT_ERRORS_HPP
#define GKAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gkat {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexing/parsing failure; carries line/column in the message.
struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
          line(line), col(col) {}
    int line;
    int col;
};

// A test or action symbol that is not declared in the active universe/alphabet.
struct UniverseError : Error {
    using Error::Error;
};

// A configured bound (atom cap, state bound, search-space guard) was exceeded.
struct CapacityError : Error {
    using Error::Error;
};

// An LTS state carries two transitions on the same atom; not graph-like.
struct NondeterminismError : Error {
    using Error::Error;
};

// A precondition of an operation does not hold (e.g. ill-layered input).
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace gkat

#endif
