#pragma once

#include <bandedge/detail/fmt.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace bandedge {

using cplx = std::complex<double>;

// Invalid input or violated precondition; maps to CLI exit status 1.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Any failure of a numerical routine; maps to CLI exit status 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : NumericalError(what + " (achieved error estimate " + detail::g6(achieved_error) + ")"),
          achieved_error_(achieved_error) {}
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

class RootQualityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MultiplicityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InstabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GapError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Raised when a series is evaluated past the point where double precision
// can resolve it. Carries the last partial sum that was still trustworthy.
class HorizonError : public NumericalError {
public:
    HorizonError(const std::string& what, cplx last_reliable, double time)
        : NumericalError(what), last_reliable_(last_reliable), time_(time) {}
    cplx last_reliable() const noexcept { return last_reliable_; }
    double time() const noexcept { return time_; }

private:
    cplx last_reliable_;
    double time_;
};

}  // namespace bandedge
