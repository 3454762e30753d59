#pragma once

#include <stdexcept>
#include <string>

namespace fdolb {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in Q(i)") {}
};

/// Operands belong to incompatible models (different n, r, d_cap, ...).
struct ModelMismatch : Error {
    explicit ModelMismatch(const std::string& what = "model mismatch") : Error(what) {}
};

struct QuotientSpaceUnsupported : Error {
    explicit QuotientSpaceUnsupported(const std::string& what = "operation requires an ambient-space form")
        : Error(what) {}
};

struct LeibnizViolation : Error {
    LeibnizViolation() : Error("connection does not satisfy the Leibniz condition") {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what = "shape mismatch") : Error(what) {}
};

struct NotClosed : Error {
    explicit NotClosed(const std::string& what = "morphism is not closed") : Error(what) {}
};

struct WrongDegree : Error {
    explicit WrongDegree(const std::string& what = "morphism has wrong degree") : Error(what) {}
};

struct NotHomotopyEquivalence : Error {
    explicit NotHomotopyEquivalence(const std::string& what = "morphism is not a homotopy equivalence")
        : Error(what) {}
};

struct InfiniteDimensionalBackend : Error {
    explicit InfiniteDimensionalBackend(
        const std::string& what = "cohomology dimensions require the exact point-base backend (m = 0)")
        : Error(what) {}
};

struct NotContractive : Error {
    explicit NotContractive(double n)
        : Error("sup-norm of the leading coefficient is " + std::to_string(n) +
                " >= 1; rescale the input first") {}
};

struct MaxIterExceeded : Error {
    MaxIterExceeded() : Error("fixed-point iteration did not converge within max_iter") {}
};

struct SingularGauge : Error {
    explicit SingularGauge(double mindet)
        : Error("gauge frame is nearly singular: min |det g0| = " + std::to_string(mindet)) {}
};

struct MissingLowerOrder : Error {
    MissingLowerOrder() : Error("lower-order solutions required before this order") {}
};

struct UnsupportedDimension : Error {
    explicit UnsupportedDimension(int m)
        : Error("base dimension m = " + std::to_string(m) + " is out of scope (m <= 1)") {}
};

} // namespace fdolb
