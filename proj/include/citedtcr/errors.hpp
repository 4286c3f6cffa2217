#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace citedtcr {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

/// Power iteration exhausted its iteration budget.
class NoConvergence : public Error {
public:
    NoConvergence(double residual, std::uint32_t iterations)
        : Error("power iteration did not converge: residual " + std::to_string(residual) +
                " after " + std::to_string(iterations) + " iterations"),
          residual(residual),
          iterations(iterations) {}
    double residual;
    std::uint32_t iterations;
};

/// A settlement party lacks qualifying past reports.
class Ineligible : public Error {
public:
    using Error::Error;
};

}  // namespace citedtcr
