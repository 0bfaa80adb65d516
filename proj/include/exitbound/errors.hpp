#pragma once

#include <stdexcept>
#include <string>

namespace exitbound {

// Invalid numeric argument (alpha <= 0, alpha = 1 where excluded, x outside [0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inconsistent or out-of-domain geometry (r >= R, point outside the set, dimension mismatch).
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A bound is evaluated outside the region where it is claimed.
class RegimeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// The requested bound degenerates (e.g. 2*gamma - q*d <= 0).
class VacuousBoundError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace exitbound
