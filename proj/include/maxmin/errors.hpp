#pragma once

#include <stdexcept>
#include <string>

namespace maxmin {

/// Wrong vertex role or unknown vertex passed to an evaluation.
struct RoleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed instance document. `where` is a JSON-pointer-ish location.
struct ParseError : std::runtime_error {
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), location(where) {}
    std::string location;
};

/// Instance shape outside what an operation supports (e.g. non-bipartite
/// input to the local algorithm).
struct UnsupportedInstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Search/iteration budget exhausted. Carries the best girth reached so the
/// caller can report it.
struct ResourceError : std::runtime_error {
    ResourceError(const std::string& what, int best_girth_achieved)
        : std::runtime_error(what), best_girth(best_girth_achieved) {}
    int best_girth;
};

/// A generated object violates a construction precondition (e.g. the ball
/// around an objective contains a cycle).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace maxmin
