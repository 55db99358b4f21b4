#include "jetlog/fq.hpp"

#include <algorithm>

namespace jetlog {

namespace {

bool factor_prime_power(std::uint64_t q, std::uint32_t& p, int& k) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d) continue;
        std::uint64_t rest = q;
        int e = 0;
        while (rest % d == 0) { rest /= d; ++e; }
        if (rest != 1) return false;
        p = static_cast<std::uint32_t>(d);
        k = e;
        return true;
    }
    p = static_cast<std::uint32_t>(q); // q itself prime
    k = 1;
    return true;
}

// dense coefficient vectors over F_p, lowest degree first
using FpVec = std::vector<std::uint32_t>;

void trim(FpVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

FpVec poly_mul(const FpVec& a, const FpVec& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpVec out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>(
                (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    trim(out);
    return out;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// remainder of a by monic b
FpVec poly_mod(FpVec a, const FpVec& b, std::uint32_t p) {
    trim(a);
    while (a.size() >= b.size()) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

FpVec decode(std::uint32_t code, std::uint32_t p, int k) {
    FpVec v(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) { v[i] = code % p; code /= p; }
    trim(v);
    return v;
}

std::uint32_t encode(const FpVec& v, std::uint32_t p) {
    std::uint32_t code = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) code = code * p + *it;
    return code;
}

bool divides(const FpVec& d, const FpVec& a, std::uint32_t p) {
    return poly_mod(a, d, p).empty();
}

// smallest monic irreducible polynomial of degree k over F_p, found by
// trial division against every monic divisor of degree <= k/2
FpVec find_irreducible(std::uint32_t p, int k) {
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (std::uint64_t lower = 0; lower < total; ++lower) {
        FpVec cand = decode(static_cast<std::uint32_t>(lower), p, k);
        cand.resize(static_cast<std::size_t>(k) + 1, 0);
        cand[static_cast<std::size_t>(k)] = 1;
        bool irreducible = cand[0] != 0; // x | cand otherwise
        for (int d = 1; irreducible && d <= k / 2; ++d) {
            std::uint64_t nd = 1;
            for (int i = 0; i < d; ++i) nd *= p;
            for (std::uint64_t lo = 0; lo < nd; ++lo) {
                FpVec div = decode(static_cast<std::uint32_t>(lo), p, d);
                div.resize(static_cast<std::size_t>(d) + 1, 0);
                div[static_cast<std::size_t>(d)] = 1;
                if (divides(div, cand, p)) { irreducible = false; break; }
            }
        }
        if (irreducible) return cand;
    }
    throw Error("no irreducible polynomial found"); // unreachable
}

} // namespace

bool Fq::is_prime_power(std::uint64_t q) {
    std::uint32_t p;
    int k;
    return factor_prime_power(q, p, k);
}

Fq::Fq(std::uint64_t q) {
    if (!factor_prime_power(q, p_, k_))
        throw Error("field size " + std::to_string(q) + " is not a prime power");
    if (q > (1u << 20))
        throw Error("field size " + std::to_string(q) + " too large for exhaustive counting");
    q_ = static_cast<std::uint32_t>(q);
    if (k_ == 1) return;
    if (q > 4096) throw Error("extension field size " + std::to_string(q) + " not supported");

    FpVec irr = find_irreducible(p_, k_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    add_.resize(static_cast<std::size_t>(q_) * q_);
    neg_.resize(q_);
    std::vector<FpVec> elems(q_);
    for (std::uint32_t a = 0; a < q_; ++a) elems[a] = decode(a, p_, k_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        FpVec na = elems[a];
        for (auto& c : na) c = c ? p_ - c : 0;
        neg_[a] = encode(na, p_);
        for (std::uint32_t b = 0; b < q_; ++b) {
            FpVec s(std::max(elems[a].size(), elems[b].size()), 0);
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::uint32_t x = i < elems[a].size() ? elems[a][i] : 0;
                std::uint32_t y = i < elems[b].size() ? elems[b][i] : 0;
                s[i] = (x + y) % p_;
            }
            trim(s);
            add_[static_cast<std::size_t>(a) * q_ + b] = encode(s, p_);
            mul_[static_cast<std::size_t>(a) * q_ + b] =
                encode(poly_mod(poly_mul(elems[a], elems[b], p_), irr, p_), p_);
        }
    }
}

Fq::Elem Fq::pow(Elem a, std::uint64_t e) const {
    Elem r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Fq::Elem Fq::inv(Elem a) const {
    if (a == 0) throw Error("division by zero in F_q");
    return pow(a, static_cast<std::uint64_t>(q_) - 2);
}

Fq::Elem Fq::from_integer(const Integer& n) const {
    Integer r = n % Integer(p_);
    if (r < 0) r += Integer(p_);
    return r.convert_to<Elem>(); // base-field residues embed as low digit
}

Fq::Elem Fq::from_rational(const Rational& r) const {
    Elem num = from_integer(numerator(r));
    Elem den = from_integer(denominator(r));
    if (den == 0)
        throw DomainMismatch("coefficient denominator vanishes in characteristic " +
                             std::to_string(p_));
    return mul(num, inv(den));
}

} // namespace jetlog
