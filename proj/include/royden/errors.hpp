#ifndef ROYDEN_ERRORS_HPP
#define ROYDEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace royden {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input fails a structural precondition (bad differential, bad degree, ...).
// The CLI maps these to exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

struct ZeroNumerator : ValidationError {
    ZeroNumerator() : ValidationError("numerator polynomial is zero") {}
};

struct NotSquarefree : ValidationError {
    explicit NotSquarefree(const std::string& what) : ValidationError(what) {}
};

struct DegreeBoundViolated : ValidationError {
    explicit DegreeBoundViolated(const std::string& what) : ValidationError(what) {}
};

struct DegenerateCover : ValidationError {
    explicit DegenerateCover(const std::string& what) : ValidationError(what) {}
};

// A numerical stage failed to converge or found an internal inconsistency.
// The CLI maps these to exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

struct RootConvergenceError : NumericalError {
    double worst_residual;
    RootConvergenceError(const std::string& what, double resid)
        : NumericalError(what), worst_residual(resid) {}
};

struct PathConstructionFailed : NumericalError {
    explicit PathConstructionFailed(const std::string& what) : NumericalError(what) {}
};

struct RankMismatch : NumericalError {
    explicit RankMismatch(const std::string& what) : NumericalError(what) {}
};

struct QuadratureStalled : NumericalError {
    double achieved;
    QuadratureStalled(const std::string& what, double err)
        : NumericalError(what), achieved(err) {}
};

struct RiemannRelationViolation : NumericalError {
    double defect;
    RiemannRelationViolation(const std::string& what, double d)
        : NumericalError(what), defect(d) {}
};

} // namespace royden

#endif
