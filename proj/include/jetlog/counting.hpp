#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetlog/jets.hpp"

namespace jetlog {

// Exhaustive F_q point count of a jet system under contact conditions.
struct CountQuery {
    AffineScheme scheme;
    int level = 0;
    std::vector<ContactCondition> conditions;
    std::uint64_t q = 2;
};

struct CountOptions {
    // Hard cap on candidate evaluations (odometer steps) actually
    // performed; the pruned search typically stays far below the naive
    // q^(N(n+1)) search-space size.
    std::uint64_t budget = 1'000'000'000ULL;
    int threads = 0; // 0 = hardware concurrency
};

Integer count_points(const CountQuery& query, const CountOptions& opts = {});

// Count of the stratum L_n^e(lY) (with_y) or pi_n(A_e) (without) for a pair.
Integer count_stratum(const PairSpec& pair, int n, int e, bool with_y,
                      const CountOptions& opts = {}, bool force = false);

struct DimEstimate {
    std::optional<int> dim;                             // nullopt = -infinity
    std::optional<std::vector<Integer>> count_polynomial; // ascending coefficients
    std::vector<std::uint64_t> primes_used;
    bool consistent = false;
    std::string warning;
};

// Dimension from point counts across primes (prime powers accepted): the
// counts are fitted first against a pure monomial c*q^d, then against the
// interpolating polynomial through all but the largest sample with the
// largest held out as confirmation. Inconsistent fits are reported, never
// forced.
DimEstimate estimate_dimension(const AffineScheme& scheme, int n,
                               const std::vector<ContactCondition>& conditions,
                               std::vector<std::uint64_t> primes, const CountOptions& opts = {});

// Grows the prime list from `pool` until the fit is consistent (or the pool
// is exhausted). Used when callers do not pin primes themselves.
DimEstimate estimate_dimension_adaptive(const AffineScheme& scheme, int n,
                                        const std::vector<ContactCondition>& conditions,
                                        const CountOptions& opts = {},
                                        std::vector<std::uint64_t> pool = {});

std::vector<std::uint64_t> default_prime_pool();

struct BundleRow {
    int n = 0;
    Integer count_n, count_n1;
    bool ratio_defined = false;
    Rational ratio;
    bool in_regime = false;              // n >= theta*e
    std::optional<bool> ok;              // ratio == q^d; empty out of regime
};

struct BundleReport {
    int e = 0, d = 0, theta = 0;
    std::uint64_t q = 0;
    std::vector<BundleRow> rows;
    bool all_ok = false;   // every in-regime row with points matches q^d
    bool empty_stratum = false;
};

// Inspects the regime boundary itself, so out-of-regime rows are always
// computed and flagged rather than rejected.
BundleReport bundle_ratio_check(const PairSpec& pair, int e, int n_min, int n_max,
                                std::uint64_t q, const CountOptions& opts = {});

struct LinearBoundRow {
    int n = 0;
    DimEstimate est;
    int bound = 0; // (n+1) * d'
    bool ok = false;
};

struct LinearBoundReport {
    std::vector<LinearBoundRow> rows;
    int dprime = 0, d = 0;
    bool slope_defined = false;
    Rational slope;        // least-squares fit through (n, dim)
    bool slope_lt_d = false;
    bool all_ok = false;
};

// dim L_n^e(Y) <= (n+1)*d' for n <= n_max; with no pair, e must be 0 and
// plain jet schemes are measured.
LinearBoundReport linear_bound_check(const AffineScheme& scheme, int n_max,
                                     const std::vector<std::uint64_t>& primes,
                                     const CountOptions& opts = {},
                                     const PairSpec* pair = nullptr, int e = 0);

// Table (e, n) -> dim L_n^e(lY) for n >= theta*e, built by the adaptive
// estimator; IncompleteTable is never thrown here, inconsistent estimates
// surface through the per-entry DimEstimate.
std::map<std::pair<int, int>, DimEstimate> jet_dims_table(const PairSpec& pair, int n_max,
                                                          int e_max,
                                                          const CountOptions& opts = {});

} // namespace jetlog
