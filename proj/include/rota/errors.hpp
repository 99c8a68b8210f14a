#pragma once

#include <stdexcept>
#include <string>

namespace rota {

/// Base class for all structured errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownBasisKey : Error {
    explicit UnknownBasisKey(const std::string& key)
        : Error("unknown basis key: " + key) {}
};

/// An exact result would need coefficients beyond the declared order.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

struct NotQuasiIdempotent : Error {
    explicit NotQuasiIdempotent(const std::string& what = "operator does not satisfy p^2 + lambda*p = 0")
        : Error(what) {}
};

struct ZeroWeight : Error {
    explicit ZeroWeight(const std::string& what = "weight must be invertible (nonzero)")
        : Error(what) {}
};

struct WeightMismatch : Error {
    explicit WeightMismatch(const std::string& what = "weights of the operands differ")
        : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what = "dimension mismatch")
        : Error(what) {}
};

struct NotFiniteBased : Error {
    explicit NotFiniteBased(const std::string& what = "operation requires a finite basis")
        : Error(what) {}
};

struct CodomainMismatch : Error {
    explicit CodomainMismatch(const std::string& what = "convolution maps have different codomains")
        : Error(what) {}
};

struct NotIdempotent : Error {
    explicit NotIdempotent(const std::string& what = "operator is not idempotent")
        : Error(what) {}
};

struct NotConnectedGraded : Error {
    explicit NotConnectedGraded(const std::string& what = "coalgebra is not connected graded")
        : Error(what) {}
};

struct WrongWeight : Error {
    explicit WrongWeight(const std::string& what = "operation requires weight -1")
        : Error(what) {}
};

struct NotPhiLinear : Error {
    explicit NotPhiLinear(const std::string& what = "map is not phi-linear on the sampled pairs")
        : Error(what) {}
};

struct DegreeTooLarge : Error {
    explicit DegreeTooLarge(const std::string& what = "requested degree exceeds the supported bound")
        : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct UnknownInstance : Error {
    explicit UnknownInstance(const std::string& what) : Error("unknown instance: " + what) {}
};

/// A constructor-time sampled audit found a violated law.
struct AxiomViolation : Error {
    explicit AxiomViolation(const std::string& what) : Error(what) {}
};

}  // namespace rota
