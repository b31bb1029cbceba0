#pragma once

#include <stdexcept>
#include <string>

namespace mixedlap {

/// Input violates a documented precondition (s outside (0,1), bad mesh, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The weighted tail integral of a field diverges, so (-Delta)^s is undefined.
class TailDivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Non-finite or otherwise unusable sampled data.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quadrature did not reach its requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved);
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Linear algebra failure; carries an estimate of the smallest eigenvalue.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double min_eigenvalue_estimate);
    double min_eigenvalue_estimate() const noexcept { return min_eig_; }

private:
    double min_eig_;
};

/// Barrier construction could not satisfy its inequalities.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, std::string trace);
    const std::string& trace() const noexcept { return trace_; }

private:
    std::string trace_;
};

/// A discrete construction needs a finer mesh to resolve the sign it tests.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration document rejected; names the offending key.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string key, const std::string& message);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace mixedlap
