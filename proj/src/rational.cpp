#include "jetlog/rational.hpp"

namespace jetlog {

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Integer parse_integer(const std::string& s) {
    if (s.empty()) throw Error("empty integer literal");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw Error("bad integer literal: '" + s + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error("bad integer literal: '" + s + "'");
    return Integer(s);
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + s + "'");
    return Rational(num, den);
}

Integer ipow(const Integer& base, unsigned long exp) {
    Integer result(1), b(base);
    while (exp) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

Rational rational_pow(const Integer& q, const Integer& e) {
    if (e >= 0) return Rational(ipow(q, e.convert_to<unsigned long>()));
    Integer p = ipow(q, Integer(-e).convert_to<unsigned long>());
    if (p == 0) throw Error("rational_pow: zero base with negative exponent");
    return Rational(Integer(1), p);
}

} // namespace jetlog
