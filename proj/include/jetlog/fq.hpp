#pragma once

#include <cstdint>
#include <vector>

#include "jetlog/rational.hpp"

namespace jetlog {

// F_q arithmetic for a prime power q = p^k. Elements are codes 0..q-1;
// for prime q the code is the residue, for extensions it encodes the
// base-p digits of the polynomial representative (tables built from an
// irreducible polynomial found at construction time).
class Fq {
public:
    using Elem = std::uint32_t;

    explicit Fq(std::uint64_t q);

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    int k() const { return k_; }
    bool is_prime_field() const { return k_ == 1; }

    Elem add(Elem a, Elem b) const {
        if (k_ == 1) { Elem s = a + b; return s >= q_ ? s - q_ : s; }
        return add_[static_cast<std::size_t>(a) * q_ + b];
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const {
        if (k_ == 1) return a == 0 ? 0 : q_ - a;
        return neg_[a];
    }
    Elem mul(Elem a, Elem b) const {
        if (k_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
        return mul_[static_cast<std::size_t>(a) * q_ + b];
    }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem inv(Elem a) const; // throws on 0

    Elem from_integer(const Integer& n) const;
    Elem from_rational(const Rational& r) const; // throws DomainMismatch if denom vanishes

    // q must factor as p^k; trial division, intended for desk-scale q.
    static bool is_prime_power(std::uint64_t q);

private:
    std::uint32_t q_ = 0, p_ = 0;
    int k_ = 1;
    std::vector<Elem> mul_, add_, neg_; // extension-field tables
};

} // namespace jetlog
