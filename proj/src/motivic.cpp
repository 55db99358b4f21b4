#include "jetlog/motivic.hpp"

#include <algorithm>
#include <sstream>

namespace jetlog {

namespace {

// degree of a normalized coefficient list; -inf for the zero polynomial
ExtDim poly_degree(const std::vector<Integer>& coeffs) {
    if (coeffs.empty()) return ExtDim::neg_inf();
    return ExtDim(static_cast<int>(coeffs.size()) - 1);
}

Rational eval_count_poly(const std::vector<Integer>& coeffs, const Integer& q) {
    Integer acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * q + *it;
    return Rational(acc);
}

} // namespace

ClassSymbol pt_symbol() { return make_symbol("PT", ExtDim(0), std::vector<Integer>{1}); }

ClassSymbol make_symbol(std::string name, ExtDim dim,
                        std::optional<std::vector<Integer>> count_poly) {
    if (name.empty()) throw Error("class symbol needs a name");
    if (count_poly) {
        while (!count_poly->empty() && count_poly->back() == 0) count_poly->pop_back();
        if (poly_degree(*count_poly) != dim)
            throw Error("count polynomial degree does not match dim for symbol '" + name + "'");
    }
    if (name == "PT" && (dim != ExtDim(0) || (count_poly && *count_poly != std::vector<Integer>{1})))
        throw Error("PT is reserved: dim 0, count polynomial 1");
    return ClassSymbol{std::move(name), std::move(dim), std::move(count_poly)};
}

SymbolTable merge_symbols(const SymbolTable& a, const SymbolTable& b) {
    SymbolTable out = a;
    for (const auto& [name, sym] : b) {
        auto it = out.find(name);
        if (it == out.end()) {
            out.emplace(name, sym);
        } else if (it->second.dim != sym.dim || it->second.count_poly != sym.count_poly) {
            throw DomainMismatch("conflicting data for class symbol '" + name + "'");
        }
    }
    return out;
}

MotivicElement MotivicElement::constant(const Integer& c) {
    MotivicElement e;
    e.add_term({}, Rational(0), c);
    return e;
}

MotivicElement MotivicElement::lpow(const Rational& q) {
    MotivicElement e;
    e.add_term({}, q, 1);
    return e;
}

MotivicElement MotivicElement::symbol(const ClassSymbol& s) {
    MotivicElement e;
    if (s.name == "PT") {
        e.add_term({}, Rational(0), 1);
        return e;
    }
    e.symbols_.emplace(s.name, s);
    e.add_term({s.name}, Rational(0), 1);
    return e;
}

MotivicElement MotivicElement::l_minus_one_pow(unsigned k) {
    MotivicElement e = constant(1);
    MotivicElement lm1 = lpow(Rational(1)) - constant(1);
    for (unsigned i = 0; i < k; ++i) e = e * lm1;
    return e;
}

void MotivicElement::add_term(const Monomial& mono, const Rational& exp, const Integer& coeff) {
    if (coeff == 0) return;
    TermKey key{mono, exp};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

MotivicElement MotivicElement::operator+(const MotivicElement& o) const {
    MotivicElement out = *this;
    out.symbols_ = merge_symbols(symbols_, o.symbols_);
    for (const auto& [key, coeff] : o.terms_) out.add_term(key.mono, key.exp, coeff);
    return out;
}

MotivicElement MotivicElement::operator-() const {
    MotivicElement out = *this;
    for (auto& [key, coeff] : out.terms_) coeff = -coeff;
    return out;
}

MotivicElement MotivicElement::operator-(const MotivicElement& o) const { return *this + (-o); }

MotivicElement MotivicElement::operator*(const MotivicElement& o) const {
    MotivicElement out;
    out.symbols_ = merge_symbols(symbols_, o.symbols_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Monomial mono;
            mono.reserve(ka.mono.size() + kb.mono.size());
            std::merge(ka.mono.begin(), ka.mono.end(), kb.mono.begin(), kb.mono.end(),
                       std::back_inserter(mono));
            out.add_term(mono, ka.exp + kb.exp, ca * cb);
        }
    }
    return out;
}

MotivicElement MotivicElement::scale(const Integer& c) const {
    MotivicElement out;
    if (c == 0) return out;
    out.symbols_ = symbols_;
    for (const auto& [key, coeff] : terms_) out.terms_.emplace(key, coeff * c);
    return out;
}

MotivicElement MotivicElement::mul_lpow(const Rational& q) const {
    MotivicElement out;
    out.symbols_ = symbols_;
    for (const auto& [key, coeff] : terms_) out.terms_.emplace(TermKey{key.mono, key.exp + q}, coeff);
    return out;
}

MotivicElement MotivicElement::pow(unsigned k) const {
    MotivicElement out = constant(1);
    for (unsigned i = 0; i < k; ++i) out = out * (*this);
    return out;
}

ExtDim MotivicElement::monomial_dim(const Monomial& m) const {
    ExtDim d(0);
    for (const auto& name : m) {
        auto it = symbols_.find(name);
        if (it == symbols_.end()) throw Error("unknown class symbol '" + name + "'");
        d = d + it->second.dim;
    }
    return d;
}

ExtDim MotivicElement::dim() const {
    ExtDim best = ExtDim::neg_inf();
    for (const auto& [key, coeff] : terms_)
        best = ExtDim::max(best, monomial_dim(key.mono) + key.exp);
    return best;
}

MotivicElement MotivicElement::truncate_below(const Rational& m) const {
    MotivicElement out;
    out.symbols_ = symbols_;
    for (const auto& [key, coeff] : terms_) {
        ExtDim d = monomial_dim(key.mono) + key.exp;
        if (d > ExtDim(m)) out.terms_.emplace(key, coeff);
    }
    return out;
}

Rational MotivicElement::specialize(const Integer& q) const {
    Rational total(0);
    for (const auto& [key, coeff] : terms_) {
        if (!is_integer(key.exp))
            throw NonIntegerExponent("cannot specialize L^" + to_string(key.exp) + " at L=" +
                                     q.str());
        Rational term(coeff);
        for (const auto& name : key.mono) {
            const ClassSymbol& sym = symbols_.at(name);
            if (!sym.count_poly)
                throw MissingCountPolynomial("class symbol '" + name +
                                             "' has no point-count polynomial");
            term *= eval_count_poly(*sym.count_poly, q);
        }
        term *= rational_pow(q, numerator(key.exp));
        total += term;
    }
    return total;
}

std::string MotivicElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
        Integer c = coeff;
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool printed = false;
        if (c != 1 || (key.mono.empty() && key.exp == 0)) {
            os << c.str();
            printed = true;
        }
        for (const auto& name : key.mono) {
            if (printed) os << "*";
            os << "[" << name << "]";
            printed = true;
        }
        if (key.exp != 0) {
            if (printed) os << "*";
            os << "L^";
            if (is_integer(key.exp) && key.exp >= 0) os << to_string(key.exp);
            else os << "(" << to_string(key.exp) << ")";
            printed = true;
        }
        if (!printed) os << "1";
    }
    return os.str();
}

} // namespace jetlog
