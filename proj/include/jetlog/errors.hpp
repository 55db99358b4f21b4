#pragma once

#include <stdexcept>
#include <string>

namespace jetlog {

// Base class for all library errors; CLI maps each subclass to a distinct
// exit code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainMismatch : public Error {
public:
    explicit DomainMismatch(const std::string& msg) : Error(msg) {}
};

class PrecisionTooLow : public Error {
public:
    explicit PrecisionTooLow(const std::string& msg) : Error(msg) {}
};

class NotMonomial : public Error {
public:
    explicit NotMonomial(const std::string& msg) : Error(msg) {}
};

class MissingCountPolynomial : public Error {
public:
    explicit MissingCountPolynomial(const std::string& msg) : Error(msg) {}
};

class NonIntegerExponent : public Error {
public:
    explicit NonIntegerExponent(const std::string& msg) : Error(msg) {}
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& msg, unsigned long long budget_used)
        : Error(msg), budget(budget_used) {}
    unsigned long long budget; // evaluations performed before giving up
};

class StabilityViolation : public Error {
public:
    explicit StabilityViolation(const std::string& msg) : Error(msg) {}
};

class MissingStratum : public Error {
public:
    explicit MissingStratum(const std::string& msg) : Error(msg) {}
};

class IncompleteTable : public Error {
public:
    explicit IncompleteTable(const std::string& msg) : Error(msg) {}
};

class NonPrincipalComponent : public Error {
public:
    explicit NonPrincipalComponent(const std::string& msg) : Error(msg) {}
};

class UnsupportedShape : public Error {
public:
    explicit UnsupportedShape(const std::string& msg) : Error(msg) {}
};

class UnboundedEnumeration : public Error {
public:
    explicit UnboundedEnumeration(const std::string& msg) : Error(msg) {}
};

class BadFixture : public Error {
public:
    explicit BadFixture(const std::string& msg) : Error(msg) {}
};

} // namespace jetlog
