#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetlog/rational.hpp"

namespace jetlog {

// A named class of varieties. `dim` is the dimension of the underlying
// class (-inf for the empty class); `count_poly` is the point-count
// polynomial in L (ascending coefficients), present when the class is
// polynomial in L. Invariant: deg(count_poly) == dim when present.
struct ClassSymbol {
    std::string name;
    ExtDim dim;
    std::optional<std::vector<Integer>> count_poly;
};

// Reserved symbol: the point. dim 0, count 1.
ClassSymbol pt_symbol();

// Validates the invariants and normalizes count_poly (strips trailing zeros).
ClassSymbol make_symbol(std::string name, ExtDim dim,
                        std::optional<std::vector<Integer>> count_poly = std::nullopt);

using SymbolTable = std::map<std::string, ClassSymbol>;

// Union of tables; throws DomainMismatch on conflicting data for one name.
SymbolTable merge_symbols(const SymbolTable& a, const SymbolTable& b);

// A finite sum of integer multiples of [X_1]...[X_k] * L^q with q rational.
// The free commutative model: no scissor relation is imposed, monomials
// multiply as multisets and exponents add. Always kept in normal form
// (no zero coefficients, PT factors stripped).
class MotivicElement {
public:
    // Monomial: sorted multiset of symbol names ("PT" never stored).
    using Monomial = std::vector<std::string>;
    struct TermKey {
        Monomial mono;
        Rational exp;
        bool operator<(const TermKey& o) const {
            if (mono != o.mono) return mono < o.mono;
            return exp < o.exp;
        }
    };
    using TermMap = std::map<TermKey, Integer>;

    MotivicElement() = default;

    static MotivicElement zero() { return {}; }
    static MotivicElement constant(const Integer& c);              // c * PT
    static MotivicElement lpow(const Rational& q);                 // L^q
    static MotivicElement symbol(const ClassSymbol& s);            // [S]
    static MotivicElement l_minus_one_pow(unsigned k);             // (L-1)^k

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    const SymbolTable& symbols() const { return symbols_; }
    std::size_t term_count() const { return terms_.size(); }

    MotivicElement operator+(const MotivicElement& o) const;
    MotivicElement operator-(const MotivicElement& o) const;
    MotivicElement operator-() const;
    MotivicElement operator*(const MotivicElement& o) const;
    MotivicElement scale(const Integer& c) const;
    MotivicElement mul_lpow(const Rational& q) const;              // * L^q
    MotivicElement pow(unsigned k) const;

    bool operator==(const MotivicElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const MotivicElement& o) const { return !(*this == o); }

    // max over terms of (sum of factor dims + exponent); -inf when empty.
    ExtDim dim() const;

    // Drops every term of dimension <= m (the image in M^ / F_m).
    MotivicElement truncate_below(const Rational& m) const;

    // L -> q, symbols -> count_poly(q). Throws MissingCountPolynomial /
    // NonIntegerExponent.
    Rational specialize(const Integer& q) const;

    std::string str() const;

private:
    void add_term(const Monomial& mono, const Rational& exp, const Integer& coeff);
    ExtDim monomial_dim(const Monomial& m) const;

    TermMap terms_;
    SymbolTable symbols_;
};

} // namespace jetlog
