#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "jetlog/errors.hpp"

namespace jetlog {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" in lowest terms, plain "p" for integers.
std::string to_string(const Rational& r);
std::string to_string(const Integer& n);

// Accepts "p", "-p", "p/q" with optional sign on the numerator.
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

Integer ipow(const Integer& base, unsigned long exp);

// q^e for integer e (possibly negative); exact rational result.
Rational rational_pow(const Integer& q, const Integer& e);

// A dimension value: a rational or -infinity (the dimension of the empty
// set). -infinity absorbs addition and loses every comparison.
class ExtDim {
public:
    ExtDim() : finite_(false) {}
    ExtDim(Rational v) : finite_(true), value_(std::move(v)) {}
    ExtDim(int v) : finite_(true), value_(v) {}

    static ExtDim neg_inf() { return ExtDim(); }

    bool is_neg_inf() const { return !finite_; }
    const Rational& value() const {
        if (!finite_) throw Error("ExtDim: value() on -infinity");
        return value_;
    }

    ExtDim operator+(const Rational& q) const {
        return finite_ ? ExtDim(value_ + q) : neg_inf();
    }
    ExtDim operator+(const ExtDim& o) const {
        return (finite_ && o.finite_) ? ExtDim(value_ + o.value_) : neg_inf();
    }

    friend bool operator==(const ExtDim& a, const ExtDim& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtDim& a, const ExtDim& b) { return !(a == b); }
    friend bool operator<(const ExtDim& a, const ExtDim& b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtDim& a, const ExtDim& b) { return a < b || a == b; }
    friend bool operator>(const ExtDim& a, const ExtDim& b) { return b < a; }
    friend bool operator>=(const ExtDim& a, const ExtDim& b) { return b <= a; }

    static ExtDim max(const ExtDim& a, const ExtDim& b) { return a < b ? b : a; }

    std::string str() const { return finite_ ? to_string(value_) : "-inf"; }

private:
    bool finite_;
    Rational value_;
};

} // namespace jetlog
