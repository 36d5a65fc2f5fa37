#pragma once

#include <stdexcept>
#include <string>

namespace conic {

/// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- arithmetic -------------------------------------------------------------

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// --- incidence primitives ---------------------------------------------------

struct IdenticalPoints : Error {
    explicit IdenticalPoints(const std::string& msg = "join of projectively identical points")
        : Error(msg) {}
};

struct IdenticalLines : Error {
    explicit IdenticalLines(const std::string& msg = "meet of projectively identical lines")
        : Error(msg) {}
};

struct SingularTransform : Error {
    SingularTransform() : Error("projective transform must have nonzero determinant") {}
};

// --- conics and marked conics -----------------------------------------------

struct DegenerateConic : Error {
    DegenerateConic() : Error("conic form is degenerate (vanishing determinant)") {}
};

struct PointNotOnConic : Error {
    explicit PointNotOnConic(const std::string& msg = "point does not lie on the conic")
        : Error(msg) {}
};

struct IdentityNotOnConic : Error {
    IdentityNotOnConic() : Error("marked identity must lie on the conic") {}
};

struct IdentityOnMarkedLine : Error {
    IdentityOnMarkedLine() : Error("marked identity must not lie on the marked line") {}
};

struct PointOnMarkedLine : Error {
    explicit PointOnMarkedLine(const std::string& msg = "operand lies on the marked line")
        : Error(msg) {}
};

// --- hexagons ---------------------------------------------------------------

struct InvalidHexagon : Error {
    explicit InvalidHexagon(const std::string& msg) : Error(msg) {}
};

struct TrivialHexagon : Error {
    TrivialHexagon() : Error("two of the three opposite-line meets coincide") {}
};

// --- classification ----------------------------------------------------------

/// Raised on the exact backend when a normalizing transform would need an
/// irrational square root.  Callers rerun on the float backend.
struct IrrationalNormalization : Error {
    explicit IrrationalNormalization(const std::string& msg)
        : Error("exact normalization needs an irrational square root: " + msg) {}
};

// --- sampling / rendering / scenes ------------------------------------------

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& msg) : Error(msg) {}
};

struct NothingVisible : Error {
    NothingVisible() : Error("no construction element intersects the clip window") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct MalformedNumber : ParseError {
    explicit MalformedNumber(const std::string& msg) : ParseError(msg) {}
};

struct UnknownField : ParseError {
    explicit UnknownField(const std::string& msg) : ParseError(msg) {}
};

struct ValidationFailed : ParseError {
    explicit ValidationFailed(const std::string& msg) : ParseError(msg) {}
};

/// A violated internal invariant: not a usage error, a kernel bug.
/// The CLI maps this to its own exit code so fuzz reports can tell the two apart.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal invariant violated: " + msg) {}
};

}  // namespace conic
