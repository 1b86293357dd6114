#pragma once

#include <stdexcept>
#include <string>

namespace xortho {

// Base class for all engine errors. Catch this to handle anything thrown
// by the library; catch subclasses for targeted recovery.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact polynomial division had a nonzero remainder. Signals that an
// identity's implicit divisibility failed, an implementation or
// parameter error rather than a recoverable condition.
class NotDivisible : public Error {
public:
    explicit NotDivisible(const std::string& msg) : Error("NotDivisible: " + msg) {}
};

// A Pochhammer factor in a denominator vanished for the given parameters.
class ParamPole : public Error {
public:
    explicit ParamPole(const std::string& msg) : Error("ParamPole: " + msg) {}
};

// Parameters violate a documented constraint; the message names it.
class ParamViolation : public Error {
public:
    explicit ParamViolation(const std::string& msg) : Error("ParamViolation: " + msg) {}
};

// Linear system has no unique solution.
class Singular : public Error {
public:
    explicit Singular(const std::string& msg) : Error("Singular: " + msg) {}
};

// Overdetermined linear system has a nonzero residual row.
class Inconsistent : public Error {
public:
    explicit Inconsistent(const std::string& msg, std::size_t row_index)
        : Error("Inconsistent: " + msg + " (row " + std::to_string(row_index) + ")"),
          row(row_index) {}
    std::size_t row;
};

// Linear system has fewer independent equations than unknowns.
class Underdetermined : public Error {
public:
    explicit Underdetermined(const std::string& msg) : Error("Underdetermined: " + msg) {}
};

// A combinatorial quantity that must be nonnegative came out negative,
// which means the input pair is malformed.
class NegativeResult : public Error {
public:
    explicit NegativeResult(const std::string& msg) : Error("NegativeResult: " + msg) {}
};

// The involution needs a nonempty set.
class EmptySet : public Error {
public:
    explicit EmptySet(const std::string& msg) : Error("EmptySet: " + msg) {}
};

// F1 must be a proper subset of {1..N} for the truncated index set.
class F1NotProper : public Error {
public:
    explicit F1NotProper(const std::string& msg) : Error("F1NotProper: " + msg) {}
};

// Reserved for involution domain failures. The componentwise pair
// involution treats empty components as fixed points, so the current
// constructions never throw this.
class InvolutionUndefined : public Error {
public:
    explicit InvolutionUndefined(const std::string& msg)
        : Error("InvolutionUndefined: " + msg) {}
};

// A Christoffel transform determinant vanished at the requested degree.
class DegeneratePhi : public Error {
public:
    explicit DegeneratePhi(const std::string& msg, long n_index)
        : Error("DegeneratePhi: " + msg + " (n " + std::to_string(n_index) + ")"),
          n(n_index) {}
    long n;
};

// The denominator polynomial vanished at a support point of a measure.
class OmegaZeroOnGrid : public Error {
public:
    explicit OmegaZeroOnGrid(const std::string& msg, long grid_x)
        : Error("OmegaZeroOnGrid: " + msg + " (x " + std::to_string(grid_x) + ")"),
          x(grid_x) {}
    long x;
};

// A gamma-function argument hit a pole during an exact sign evaluation.
class GammaPole : public Error {
public:
    explicit GammaPole(const std::string& msg) : Error("GammaPole: " + msg) {}
};

// A hypothesis gate for a numeric evaluation failed; message names it.
class PreconditionFailed : public Error {
public:
    explicit PreconditionFailed(const std::string& msg)
        : Error("PreconditionFailed: " + msg) {}
};

// Adaptive quadrature hit the node cap before reaching its tolerance.
class QuadratureNonConvergent : public Error {
public:
    explicit QuadratureNonConvergent(const std::string& msg)
        : Error("QuadratureNonConvergent: " + msg) {}
};

// A Darboux factorization was requested on the wrong side.
class EmptyComponent : public Error {
public:
    explicit EmptyComponent(const std::string& msg) : Error("EmptyComponent: " + msg) {}
};

}  // namespace xortho
