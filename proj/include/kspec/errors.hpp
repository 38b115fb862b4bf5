#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kspec {

// Malformed or invalid user input (domain spec, flags). CLI exit code 2.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public SpecError {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public SpecError {
public:
    UnknownIdentifier(std::size_t offset, const std::string& name);
    std::size_t offset() const { return offset_; }
    const std::string& name() const { return name_; }

private:
    std::size_t offset_;
    std::string name_;
};

class UndefinedValue : public std::domain_error {
public:
    UndefinedValue(double point, const std::string& reason);
    double point() const { return point_; }
    const std::string& reason() const { return reason_; }

private:
    double point_;
    std::string reason_;
};

// Numerical diagnostics could not reach a verdict. CLI exit code 3.
class Inconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested combination has no implementation (shape, space, map). CLI exit code 4.
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MeasureTolerance : public Inconclusive {
public:
    using Inconclusive::Inconclusive;
};

// Conformal-module argument errors (outside disk/sector, out of validity range).
class DomainOfValidity : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InverseFailure : public Inconclusive {
public:
    using Inconclusive::Inconclusive;
};

class DerivativeFailure : public Inconclusive {
public:
    using Inconclusive::Inconclusive;
};

} // namespace kspec
