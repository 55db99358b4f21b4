#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jetlog/rational.hpp"

namespace jetlog {

// Ordered ambient variable list, shared between polynomials of one domain.
class VarSet {
public:
    explicit VarSet(std::vector<std::string> names);
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::size_t index_of(const std::string& name) const; // throws DomainMismatch
    bool operator==(const VarSet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_varset(std::vector<std::string> names);

// Exact multivariate polynomial over Q. Terms map exponent vectors to
// nonzero rational coefficients; exponent vectors always have the arity
// of the variable set.
class Poly {
public:
    using ExpVec = std::vector<std::uint32_t>;
    using TermMap = std::map<ExpVec, Rational>;

    explicit Poly(VarSetPtr vars);

    static Poly zero(VarSetPtr vars) { return Poly(std::move(vars)); }
    static Poly constant(VarSetPtr vars, const Rational& c);
    static Poly variable(VarSetPtr vars, std::size_t index);
    static Poly monomial(VarSetPtr vars, ExpVec exps, const Rational& c);

    const VarSetPtr& vars() const { return vars_; }
    std::size_t arity() const { return vars_->size(); }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // degree in a single variable, and total degree (-1 for the zero poly)
    int degree_in(std::size_t var) const;
    int total_degree() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scale(const Rational& c) const;
    Poly pow(unsigned k) const;
    Poly partial_derivative(std::size_t var) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const { return terms_ < o.terms_; } // arbitrary total order

    Rational eval(std::span<const Rational> point) const;
    // Evaluation over F_p; point entries are residues mod p. Throws
    // DomainMismatch when a coefficient denominator vanishes mod p.
    std::uint64_t eval_mod(std::span<const std::uint64_t> point, std::uint64_t p) const;

    // Deterministic printer; parse() round-trips its output exactly.
    std::string str() const;
    // Grammar: sum of terms, terms are rational literals and var^k factors
    // joined by optional '*'. When `vars` is null the variable set is the
    // sorted set of identifiers appearing in the string.
    static Poly parse(const std::string& text, VarSetPtr vars = nullptr);

    void add_term(const ExpVec& exps, const Rational& c);

private:
    void check_same_domain(const Poly& o) const;

    VarSetPtr vars_;
    TermMap terms_;
};

// Finitely generated ideal in a fixed ambient variable set. An empty
// generator list denotes the zero ideal (used for affine space).
class Ideal {
public:
    explicit Ideal(VarSetPtr vars) : vars_(std::move(vars)) {}
    Ideal(VarSetPtr vars, std::vector<Poly> gens);

    const VarSetPtr& vars() const { return vars_; }
    const std::vector<Poly>& gens() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }
    // contains a nonzero constant generator (the whole ring, up to radical)
    bool has_unit_generator() const;
    bool is_monomial_ideal() const;
    bool is_principal() const { return gens_.size() == 1; }

    bool operator==(const Ideal& o) const;

private:
    VarSetPtr vars_;
    std::vector<Poly> gens_;
};

// Generators of a^l: all l-fold products of generators, deduplicated.
Ideal ideal_power(const Ideal& a, unsigned l);

// Monomial-divisibility membership test a subset-of b. Both ideals must be
// monomial; throws NotMonomial otherwise (the hypothesis must then be
// user-asserted).
bool monomial_membership(const Ideal& a, const Ideal& b);

} // namespace jetlog
