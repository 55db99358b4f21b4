#include "jetlog/series.hpp"

#include <map>

namespace jetlog {

TruncatedSeries::TruncatedSeries(VarSetPtr vars, int precision) : vars_(std::move(vars)) {
    if (precision < 0) throw Error("series precision must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(precision) + 1, Poly::zero(vars_));
}

TruncatedSeries::TruncatedSeries(std::vector<Poly> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("series needs at least the constant coefficient");
    vars_ = coeffs_.front().vars();
    for (const auto& c : coeffs_)
        if (!(*c.vars() == *vars_))
            throw DomainMismatch("series coefficients over different variable sets");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    int n = std::min(precision(), o.precision());
    std::vector<Poly> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) out.push_back(coeffs_[j] + o.coeffs_[j]);
    return TruncatedSeries(std::move(out));
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    int n = std::min(precision(), o.precision());
    std::vector<Poly> out(static_cast<std::size_t>(n) + 1, Poly::zero(vars_));
    for (int i = 0; i <= n; ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            out[i + j] = out[i + j] + coeffs_[i] * o.coeffs_[j];
        }
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries TruncatedSeries::scale(const Rational& c) const {
    std::vector<Poly> out;
    out.reserve(coeffs_.size());
    for (const auto& p : coeffs_) out.push_back(p.scale(c));
    return TruncatedSeries(std::move(out));
}

TruncatedSeries TruncatedSeries::truncate(int n) const {
    if (n < 0) throw Error("series precision must be >= 0");
    if (n > precision()) throw PrecisionTooLow("cannot raise series precision by truncation");
    std::vector<Poly> out(coeffs_.begin(), coeffs_.begin() + n + 1);
    return TruncatedSeries(std::move(out));
}

TruncatedSeries series_substitute(const Poly& f, const std::vector<TruncatedSeries>& args, int n) {
    if (args.size() != f.arity())
        throw DomainMismatch("series_substitute: one series per variable required");
    if (n < 0) throw Error("series_substitute: n must be >= 0");
    VarSetPtr cvars;
    for (const auto& s : args) {
        if (s.precision() < n)
            throw PrecisionTooLow("series precision below substitution level");
        if (!cvars) cvars = s.vars();
        else if (!(*cvars == *s.vars()))
            throw DomainMismatch("argument series over different variable sets");
    }
    if (!cvars) cvars = make_varset({}); // f is constant in zero variables

    TruncatedSeries acc(cvars, n);
    // cached powers: powers[i][e] = args[i]^e truncated at n
    std::vector<std::map<std::uint32_t, TruncatedSeries>> powers(args.size());
    auto arg_power = [&](std::size_t i, std::uint32_t e) -> const TruncatedSeries& {
        auto it = powers[i].find(e);
        if (it != powers[i].end()) return it->second;
        if (e == 1) return powers[i].emplace(1, args[i].truncate(n)).first->second;
        const TruncatedSeries& lower = arg_power(i, e - 1);
        return powers[i].emplace(e, lower * args[i].truncate(n)).first->second;
    };

    for (const auto& [exps, coeff] : f.terms()) {
        TruncatedSeries term = TruncatedSeries(cvars, n);
        bool started = false;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            const TruncatedSeries& p = arg_power(i, exps[i]);
            term = started ? term * p : p.truncate(n);
            started = true;
        }
        if (!started) {
            std::vector<Poly> c(static_cast<std::size_t>(n) + 1, Poly::zero(cvars));
            c[0] = Poly::constant(cvars, Rational(1));
            term = TruncatedSeries(std::move(c));
        }
        acc = acc + term.scale(coeff);
    }
    return acc;
}

} // namespace jetlog
