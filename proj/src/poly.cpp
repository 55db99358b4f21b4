#include "jetlog/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace jetlog {

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw Error("empty variable name");
        if (!index_.emplace(names_[i], i).second)
            throw Error("duplicate variable name '" + names_[i] + "'");
    }
}

std::size_t VarSet::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw DomainMismatch("unknown variable '" + name + "'");
    return it->second;
}

VarSetPtr make_varset(std::vector<std::string> names) {
    return std::make_shared<const VarSet>(std::move(names));
}

Poly::Poly(VarSetPtr vars) : vars_(std::move(vars)) {
    if (!vars_) throw Error("polynomial needs a variable set");
}

Poly Poly::constant(VarSetPtr vars, const Rational& c) {
    Poly p(std::move(vars));
    p.add_term(ExpVec(p.arity(), 0), c);
    return p;
}

Poly Poly::variable(VarSetPtr vars, std::size_t index) {
    Poly p(std::move(vars));
    if (index >= p.arity()) throw Error("variable index out of range");
    ExpVec e(p.arity(), 0);
    e[index] = 1;
    p.add_term(e, Rational(1));
    return p;
}

Poly Poly::monomial(VarSetPtr vars, ExpVec exps, const Rational& c) {
    Poly p(std::move(vars));
    if (exps.size() != p.arity()) throw DomainMismatch("exponent vector arity mismatch");
    p.add_term(exps, c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

int Poly::degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (auto x : e) t += static_cast<int>(x);
        d = std::max(d, t);
    }
    return d;
}

void Poly::check_same_domain(const Poly& o) const {
    if (vars_ == o.vars_) return;
    if (!(*vars_ == *o.vars_)) throw DomainMismatch("polynomials over different variable sets");
}

void Poly::add_term(const ExpVec& exps, const Rational& c) {
    if (c == 0) return;
    if (exps.size() != arity()) throw DomainMismatch("exponent vector arity mismatch");
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    check_same_domain(o);
    Poly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_same_domain(o);
    Poly out(vars_);
    ExpVec e(arity());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly Poly::scale(const Rational& c) const {
    Poly out(vars_);
    if (c == 0) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

Poly Poly::pow(unsigned k) const {
    Poly out = Poly::constant(vars_, Rational(1));
    for (unsigned i = 0; i < k; ++i) out = out * (*this);
    return out;
}

Poly Poly::partial_derivative(std::size_t var) const {
    if (var >= arity()) throw Error("variable index out of range");
    Poly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec d = e;
        d[var] -= 1;
        out.add_term(d, c * Rational(e[var]));
    }
    return out;
}

bool Poly::operator==(const Poly& o) const {
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_)) return false;
    return terms_ == o.terms_;
}

Rational Poly::eval(std::span<const Rational> point) const {
    if (point.size() != arity()) throw DomainMismatch("evaluation point arity mismatch");
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

std::uint64_t residue_mod(const Rational& c, std::uint64_t p) {
    Integer num = numerator(c) % Integer(p);
    if (num < 0) num += Integer(p);
    Integer den = denominator(c) % Integer(p);
    if (den == 0) throw DomainMismatch("coefficient denominator vanishes mod " + std::to_string(p));
    std::uint64_t n = num.convert_to<std::uint64_t>();
    std::uint64_t d = den.convert_to<std::uint64_t>();
    return (n * powmod(d, p - 2, p)) % p;
}

} // namespace

std::uint64_t Poly::eval_mod(std::span<const std::uint64_t> point, std::uint64_t p) const {
    if (point.size() != arity()) throw DomainMismatch("evaluation point arity mismatch");
    std::uint64_t total = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t t = residue_mod(c, p);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t = (t * (point[i] % p)) % p;
        total = (total + t) % p;
    }
    return total;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = c;
        if (first) {
            if (c < 0) { os << "-"; mag = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) mag = -c;
        }
        first = false;
        bool has_vars = std::any_of(e.begin(), e.end(), [](std::uint32_t x) { return x != 0; });
        bool printed = false;
        if (mag != 1 || !has_vars) {
            os << to_string(mag);
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << vars_->name(i);
            if (e[i] > 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

namespace {

struct Token {
    enum Kind { Number, Ident, Caret, Star, Plus, Minus, End } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '/') {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == j + 1) throw Error("bad rational literal in polynomial: '" + s + "'");
                j = k;
            }
            out.push_back({Token::Number, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i)});
            i = j;
        } else if (c == '^') { out.push_back({Token::Caret, "^"}); ++i; }
        else if (c == '*') { out.push_back({Token::Star, "*"}); ++i; }
        else if (c == '+') { out.push_back({Token::Plus, "+"}); ++i; }
        else if (c == '-') { out.push_back({Token::Minus, "-"}); ++i; }
        else throw Error(std::string("unexpected character '") + c + "' in polynomial");
    }
    out.push_back({Token::End, ""});
    return out;
}

struct ParsedTerm {
    Rational coeff{1};
    std::map<std::string, std::uint32_t> exps;
};

// sum := [sign] term (sign term)*;  term := factor ('*'? factor)*
std::vector<ParsedTerm> parse_terms(const std::string& text) {
    auto toks = tokenize(text);
    std::vector<ParsedTerm> terms;
    std::size_t pos = 0;
    bool negative = false;
    if (toks[pos].kind == Token::Plus) ++pos;
    else if (toks[pos].kind == Token::Minus) { negative = true; ++pos; }
    while (true) {
        ParsedTerm term;
        if (negative) term.coeff = -term.coeff;
        bool any_factor = false;
        while (true) {
            if (toks[pos].kind == Token::Star) { ++pos; continue; }
            if (toks[pos].kind == Token::Number) {
                term.coeff *= parse_rational(toks[pos].text);
                ++pos;
                any_factor = true;
            } else if (toks[pos].kind == Token::Ident) {
                std::string name = toks[pos].text;
                ++pos;
                std::uint32_t exp = 1;
                if (toks[pos].kind == Token::Caret) {
                    ++pos;
                    if (toks[pos].kind != Token::Number ||
                        toks[pos].text.find('/') != std::string::npos)
                        throw Error("exponent must be a nonnegative integer");
                    exp = static_cast<std::uint32_t>(std::stoul(toks[pos].text));
                    ++pos;
                }
                term.exps[name] += exp;
                any_factor = true;
            } else {
                break;
            }
        }
        if (!any_factor) throw Error("empty term in polynomial '" + text + "'");
        terms.push_back(std::move(term));
        if (toks[pos].kind == Token::Plus) { negative = false; ++pos; }
        else if (toks[pos].kind == Token::Minus) { negative = true; ++pos; }
        else if (toks[pos].kind == Token::End) break;
        else throw Error("unexpected token '" + toks[pos].text + "' in polynomial");
    }
    return terms;
}

} // namespace

Poly Poly::parse(const std::string& text, VarSetPtr vars) {
    auto terms = parse_terms(text);
    if (!vars) {
        std::set<std::string> names;
        for (const auto& t : terms)
            for (const auto& [name, e] : t.exps) names.insert(name);
        vars = make_varset(std::vector<std::string>(names.begin(), names.end()));
    }
    Poly p(vars);
    for (const auto& t : terms) {
        ExpVec e(vars->size(), 0);
        for (const auto& [name, exp] : t.exps) e[vars->index_of(name)] += exp;
        p.add_term(e, t.coeff);
    }
    return p;
}

Ideal::Ideal(VarSetPtr vars, std::vector<Poly> gens) : vars_(std::move(vars)), gens_(std::move(gens)) {
    for (const auto& g : gens_)
        if (!(*g.vars() == *vars_))
            throw DomainMismatch("ideal generator over a different variable set");
}

bool Ideal::has_unit_generator() const {
    return std::any_of(gens_.begin(), gens_.end(),
                       [](const Poly& g) { return g.is_constant() && !g.is_zero(); });
}

bool Ideal::is_monomial_ideal() const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [](const Poly& g) { return g.is_monomial(); });
}

bool Ideal::operator==(const Ideal& o) const {
    return *vars_ == *o.vars_ && gens_ == o.gens_;
}

Ideal ideal_power(const Ideal& a, unsigned l) {
    if (l == 0) throw Error("ideal_power: exponent must be >= 1");
    if (a.is_zero_ideal()) return a;
    std::set<Poly> seen;
    std::vector<Poly> out;
    // combinations with repetition of generator indices
    std::vector<std::size_t> idx(l, 0);
    while (true) {
        Poly prod = a.gens()[idx[0]];
        for (unsigned i = 1; i < l; ++i) prod = prod * a.gens()[idx[i]];
        if (seen.insert(prod).second) out.push_back(prod);
        // next nondecreasing index vector
        int i = static_cast<int>(l) - 1;
        while (i >= 0 && idx[i] + 1 >= a.gens().size()) --i;
        if (i < 0) break;
        std::size_t next = idx[i] + 1;
        for (unsigned j = i; j < l; ++j) idx[j] = next;
    }
    return Ideal(a.vars(), std::move(out));
}

bool monomial_membership(const Ideal& a, const Ideal& b) {
    if (!a.is_monomial_ideal() || !b.is_monomial_ideal())
        throw NotMonomial("membership check requires monomial ideals");
    if (!(*a.vars() == *b.vars()))
        throw DomainMismatch("ideals over different variable sets");
    for (const auto& g : a.gens()) {
        if (g.is_zero()) continue;
        const auto& ge = g.terms().begin()->first;
        bool divisible = false;
        for (const auto& h : b.gens()) {
            if (h.is_zero()) continue;
            const auto& he = h.terms().begin()->first;
            bool ok = true;
            for (std::size_t i = 0; i < ge.size(); ++i)
                if (he[i] > ge[i]) { ok = false; break; }
            if (ok) { divisible = true; break; }
        }
        if (!divisible) return false;
    }
    return true;
}

} // namespace jetlog
