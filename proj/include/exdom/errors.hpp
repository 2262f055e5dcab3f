#pragma once

#include <stdexcept>
#include <string>

namespace exdom {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (bad flag, bad parameter range).
class usage_error : public error {
public:
    using error::error;
};

/// Argument lies outside the mathematical domain of the function.
class domain_error : public error {
public:
    using error::error;
};

/// Evaluation point too close to a pole or branch point.
class singular_point_error : public error {
public:
    using error::error;
};

/// A finite-difference stencil left the domain of the field.
class out_of_domain_error : public error {
public:
    using error::error;
};

/// An iterative method did not reach its tolerance.
class convergence_error : public error {
public:
    convergence_error(const std::string& what, double residual)
        : error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace exdom
