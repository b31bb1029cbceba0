#include "mixedlap/errors.hpp"

#include <utility>

namespace mixedlap {

AccuracyError::AccuracyError(const std::string& what, double achieved)
    : std::runtime_error(what), achieved_(achieved) {}

NumericalError::NumericalError(const std::string& what, double min_eigenvalue_estimate)
    : std::runtime_error(what), min_eig_(min_eigenvalue_estimate) {}

ConstructionError::ConstructionError(const std::string& what, std::string trace)
    : std::runtime_error(what), trace_(std::move(trace)) {}

ParseError::ParseError(std::string key, const std::string& message)
    : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

}  // namespace mixedlap
