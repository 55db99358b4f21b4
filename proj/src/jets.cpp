#include "jetlog/jets.hpp"

#include <algorithm>

namespace jetlog {

AffineScheme make_affine_scheme(int ambient_dim, Ideal ideal, std::optional<int> expected_dim,
                                std::string name) {
    if (ambient_dim <= 0) throw Error("ambient dimension must be positive");
    if (static_cast<int>(ideal.vars()->size()) != ambient_dim)
        throw DomainMismatch("ideal variable count does not match ambient dimension");
    if (expected_dim && (*expected_dim < 0 || *expected_dim > ambient_dim))
        throw Error("expected_dim out of range");
    return AffineScheme{ambient_dim, std::move(ideal), expected_dim, std::move(name)};
}

std::string jet_var_name(const std::string& base, int level) {
    return base + "_" + std::to_string(level);
}

VarSetPtr jet_varset(const VarSet& base, int level) {
    std::vector<std::string> names;
    names.reserve(base.size() * static_cast<std::size_t>(level + 1));
    for (int j = 0; j <= level; ++j)
        for (const auto& v : base.names()) names.push_back(jet_var_name(v, j));
    return make_varset(std::move(names));
}

std::vector<Poly> JetSystem::all_equations() const {
    std::vector<Poly> out;
    for (const auto& per_gen : equations)
        for (const auto& eq : per_gen) out.push_back(eq);
    return out;
}

std::size_t JetSystem::equation_count() const {
    std::size_t n = 0;
    for (const auto& per_gen : equations) n += per_gen.size();
    return n;
}

JetSystem jet_equations(const AffineScheme& s, int n) {
    if (n < 0) throw Error("jet level must be >= 0");
    const VarSet& base = *s.ideal.vars();
    const int N = s.ambient_dim;
    VarSetPtr jvars = jet_varset(base, n);

    // v_i(t) = sum_j v_i^(j) t^j with level-major variable index j*N + i
    std::vector<TruncatedSeries> coords;
    coords.reserve(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        std::vector<Poly> c;
        c.reserve(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j)
            c.push_back(Poly::variable(jvars, static_cast<std::size_t>(j) * N + i));
        coords.emplace_back(std::move(c));
    }

    JetSystem sys;
    sys.level = n;
    sys.base = s;
    sys.jet_vars = jvars;
    for (const auto& g : s.ideal.gens()) {
        TruncatedSeries sub = series_substitute(g, coords, n);
        sys.equations.push_back(sub.coeffs());
    }
    return sys;
}

namespace {

// numeric truncated series over Q, for evaluating generators on a jet
using NumSeries = std::vector<Rational>;

NumSeries num_mul(const NumSeries& a, const NumSeries& b, int n) {
    NumSeries out(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

NumSeries eval_gen_on_jet(const Poly& g, const std::vector<NumSeries>& coords, int n) {
    NumSeries total(static_cast<std::size_t>(n) + 1, Rational(0));
    for (const auto& [exps, coeff] : g.terms()) {
        NumSeries term(static_cast<std::size_t>(n) + 1, Rational(0));
        term[0] = coeff;
        for (std::size_t i = 0; i < exps.size(); ++i)
            for (std::uint32_t k = 0; k < exps[i]; ++k) term = num_mul(term, coords[i], n);
        for (int j = 0; j <= n; ++j) total[j] += term[j];
    }
    return total;
}

} // namespace

ContactOrder contact_order(const std::vector<Rational>& jet, int n, const Ideal& a) {
    const int N = static_cast<int>(a.vars()->size());
    if (static_cast<int>(jet.size()) != N * (n + 1))
        throw DomainMismatch("jet coordinate count does not match N*(n+1)");
    std::vector<NumSeries> coords(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        coords[i].resize(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) coords[i][j] = jet[static_cast<std::size_t>(j) * N + i];
    }
    int best = n + 1;
    for (const auto& g : a.gens()) {
        NumSeries v = eval_gen_on_jet(g, coords, n);
        for (int j = 0; j < best; ++j) {
            if (v[j] != 0) { best = j; break; }
        }
        if (best == 0) break;
    }
    if (a.is_zero_ideal() || best == n + 1) return ContactOrder::saturated(n + 1);
    return ContactOrder::exact(best);
}

DivisorOrderValue divisor_order(const std::vector<Rational>& jet, int n,
                                const std::vector<DivisorPart>& parts) {
    DivisorOrderValue out{false, Rational(0)};
    for (const auto& part : parts) {
        if (!part.ideal.is_principal())
            throw NonPrincipalComponent("divisor component must be a principal ideal");
        if (part.coeff == 0) continue;
        ContactOrder ord = contact_order(jet, n, part.ideal);
        out.value += part.coeff * Rational(ord.value);
        if (ord.at_least) out.at_least = true;
    }
    return out;
}

PairSpec make_pair_spec(AffineScheme X, int r, Ideal z_ideal, Ideal y_ideal, Rational q, int l,
                        int theta, bool hypothesis_asserted, std::string name) {
    if (r < 1) throw Error("Gorenstein index r must be >= 1");
    if (l < 1) throw Error("scaling l must be >= 1");
    if (theta < 1) throw Error("stability level theta must be >= 1");
    if (q <= 0) throw Error("coefficient q must be positive");
    if (!(*z_ideal.vars() == *X.ideal.vars()) || !(*y_ideal.vars() == *X.ideal.vars()))
        throw DomainMismatch("pair ideals must share the ambient variable set");
    return PairSpec{std::move(X), r,     std::move(z_ideal),  std::move(y_ideal), std::move(q),
                    l,            theta, hypothesis_asserted, std::move(name)};
}

std::vector<ContactCondition> ae_conditions(const PairSpec& pair, int n, int e, bool force) {
    if (n < 0 || e < 0) throw Error("n and e must be >= 0");
    if (n < pair.theta * e && !force)
        throw StabilityViolation("n < theta*e (" + std::to_string(n) + " < " +
                                 std::to_string(pair.theta) + "*" + std::to_string(e) +
                                 "): outside the stable regime; pass force to query anyway");
    std::vector<ContactCondition> conds;
    if (!pair.X.ideal.is_zero_ideal())
        conds.push_back({pair.X.ideal, OrderKind::AtLeast, n + 1});
    // ord_Z = 0 is vacuous when Z is cut out by a unit
    if (!(pair.z_ideal.has_unit_generator() && e == 0))
        conds.push_back({pair.z_ideal, OrderKind::Exact, e});
    return conds;
}

std::vector<ContactCondition> stratum_conditions(const PairSpec& pair, int n, int e, bool force) {
    std::vector<ContactCondition> conds = ae_conditions(pair, n, e, force);
    if (!pair.y_ideal.is_zero_ideal()) {
        Ideal scaled = pair.l == 1 ? pair.y_ideal : ideal_power(pair.y_ideal, pair.l);
        conds.push_back({std::move(scaled), OrderKind::AtLeast, n + 1});
    }
    return conds;
}

Ideal jacobian_z_ideal(const AffineScheme& s) {
    if (s.ideal.gens().size() != 1)
        throw UnsupportedShape("Jacobian Z-ideal construction needs a hypersurface");
    if (!s.expected_dim || *s.expected_dim != s.ambient_dim - 1)
        throw UnsupportedShape("Jacobian Z-ideal construction needs expected_dim = N-1");
    const Poly& g = s.ideal.gens().front();
    std::vector<Poly> gens;
    for (std::size_t i = 0; i < g.arity(); ++i) {
        Poly d = g.partial_derivative(i);
        if (!d.is_zero()) gens.push_back(std::move(d));
    }
    gens.push_back(g);
    return Ideal(s.ideal.vars(), std::move(gens));
}

} // namespace jetlog
