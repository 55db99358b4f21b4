#pragma once

#include <vector>

#include "jetlog/poly.hpp"

namespace jetlog {

// Univariate power series in t, known modulo t^(precision+1), with
// polynomial coefficients. coeffs.size() == precision + 1 always.
class TruncatedSeries {
public:
    TruncatedSeries(VarSetPtr vars, int precision);
    TruncatedSeries(std::vector<Poly> coeffs); // precision from length

    int precision() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Poly>& coeffs() const { return coeffs_; }
    const Poly& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
    const VarSetPtr& vars() const { return vars_; }

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const; // truncated product
    TruncatedSeries scale(const Rational& c) const;
    TruncatedSeries truncate(int n) const; // lower the precision to n

    bool operator==(const TruncatedSeries& o) const { return coeffs_ == o.coeffs_; }

private:
    VarSetPtr vars_;
    std::vector<Poly> coeffs_;
};

// f(args) expanded modulo t^(n+1). One series per variable of f, all with
// precision >= n (PrecisionTooLow otherwise) and over one coefficient
// variable set. The result's coefficient of t^j is a Poly in that set.
TruncatedSeries series_substitute(const Poly& f, const std::vector<TruncatedSeries>& args, int n);

} // namespace jetlog
