#ifndef QCARNOT_ERRORS_HPP
#define QCARNOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcarnot {

// Bad physical parameters or arguments. CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure (integrator budget exhausted, no engine regime,
// no contraction). CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qcarnot

#endif
