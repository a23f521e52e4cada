#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsx {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad expression text, bad file, bad argument ranges.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Expression syntax error with byte offset and the token class expected there.
class ParseError : public ConfigError {
public:
    ParseError(std::size_t offset, std::string expected)
        : ConfigError("syntax error at offset " + std::to_string(offset) +
                      ": expected " + expected),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

// Function fails positivity/finiteness requirements on the check grid.
class DomainError : public ConfigError {
public:
    explicit DomainError(const std::string& msg) : ConfigError(msg) {}
};

// Numerical failure: quadrature non-convergence, singular system, node collision.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Kahan compensated accumulator.
class KahanSum {
public:
    void add(double value) {
        double y = value - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double kahan_total(const std::vector<double>& values) {
    KahanSum s;
    for (double v : values) s.add(v);
    return s.value();
}

}  // namespace qsx
