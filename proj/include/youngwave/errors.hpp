#pragma once

#include <stdexcept>
#include <string>

namespace youngwave {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rectangle corners or paired fields that do not sit on a shared grid.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Out-of-range numerical parameter (exponent, lag, level count, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// A mathematical precondition of an integral fails (exponent sums <= 1, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

// Empty cone, query outside the domain, cone leaving the field domain.
class GeometryError : public Error {
public:
    using Error::Error;
};

// Too few usable points for a regression.
class StatisticsError : public Error {
public:
    using Error::Error;
};

// Problem size above a configured cap.
class SizeError : public Error {
public:
    using Error::Error;
};

// Factorization failure that jitter could not repair.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace youngwave
