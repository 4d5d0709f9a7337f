#pragma once

#include <stdexcept>
#include <string>

namespace bonfbounds {

/// Parameter outside an operation's stated domain (k < r, bad permutation, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An exact integer value would not fit the fixed-width representation.
class overflow_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// The event system does not carry intersections deep enough for the request.
class insufficient_data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates an invariant (incomplete table, bad masses, ...).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bonfbounds
