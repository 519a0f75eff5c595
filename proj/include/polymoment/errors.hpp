#ifndef POLYMOMENT_ERRORS_HPP
#define POLYMOMENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polymoment {

// Error hierarchy. Everything numeric-or-structural derives from Error so the
// CLI can map "library failed" to one exit code and keep parse errors separate.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation called on a polynomial of unsuitable degree (e.g. roots of a constant).
struct DegreeError : Error {
    explicit DegreeError(const std::string& msg) : Error(msg) {}
};

// An iteration (root finder, Newton corrector) failed to converge.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Adaptive path tracking could not keep the fiber points separated.
struct PathTooClose : Error {
    explicit PathTooClose(const std::string& msg) : Error(msg) {}
};

// A path plan violates its invariants (repeated waypoints, guarded zones).
struct PathPlanError : Error {
    explicit PathPlanError(const std::string& msg) : Error(msg) {}
};

// Combinatorial structure failed validation (cactus not a tree, marks missing).
struct StructureError : Error {
    explicit StructureError(const std::string& msg) : Error(msg) {}
};

// Nearest-match assignment between two point sets was ambiguous.
struct MatchError : Error {
    explicit MatchError(const std::string& msg) : Error(msg) {}
};

// Base point of the monodromy data coincides with P(a) or P(b).
struct BasePointCollision : Error {
    explicit BasePointCollision(const std::string& msg) : Error(msg) {}
};

// Linear solver hit an ill-conditioned system.
struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

// Series evaluated below its validity radius.
struct RadiusError : Error {
    explicit RadiusError(const std::string& msg) : Error(msg) {}
};

// Malformed textual input (polynomials, endpoint expressions).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace polymoment

#endif
