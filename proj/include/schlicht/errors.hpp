#ifndef SCHLICHT_ERRORS_HPP
#define SCHLICHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace schlicht
{

// Raised by series arithmetic when a recursion needs a nonzero (or unit)
// constant term that the operand does not have.
class series_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Raised by the Briot-Bouquet recursion when a denominator n + B*q0 + Gamma
// becomes too small.
class solver_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised by the semigroup integrator when a trajectory reaches the unit circle.
class disk_escape_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised by the semigroup integrator when the adaptive step underflows.
class step_underflow_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace schlicht

#endif
