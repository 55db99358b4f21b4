#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetlog/poly.hpp"
#include "jetlog/series.hpp"

namespace jetlog {

// A closed subscheme of A^N given by ideal generators. expected_dim is the
// declared dimension d' used by the dimension-bound checks.
struct AffineScheme {
    int ambient_dim = 0;
    Ideal ideal;
    std::optional<int> expected_dim;
    std::string name; // fixture label, informational
};

AffineScheme make_affine_scheme(int ambient_dim, Ideal ideal,
                                std::optional<int> expected_dim = std::nullopt,
                                std::string name = "");

// Jet coefficient variable "v_j" for base variable v at level j.
std::string jet_var_name(const std::string& base, int level);

// Level-major jet variable order: x_0, y_0, ..., x_1, y_1, ...; the
// counting engine relies on this order for level-by-level pruning.
VarSetPtr jet_varset(const VarSet& base, int level);

// The defining equations of L_n(Y): substituting v(t) = sum_j v_j t^j into
// each generator and collecting t-coefficients. equations[g][j] is the
// coefficient of t^j of generator g; its vanishing locus is L_n(Y).
struct JetSystem {
    int level = 0;
    AffineScheme base;
    VarSetPtr jet_vars;
    std::vector<std::vector<Poly>> equations;

    std::vector<Poly> all_equations() const;
    std::size_t equation_count() const;
};

JetSystem jet_equations(const AffineScheme& s, int n);

// The t-adic order of an ideal pulled back along a truncated jet: exact
// values 0..n are distinguished from the saturated marker (order >= n+1;
// the truncation cannot see further).
struct ContactOrder {
    bool at_least = false;
    int value = 0;

    static ContactOrder exact(int m) { return {false, m}; }
    static ContactOrder saturated(int m) { return {true, m}; }
    bool operator==(const ContactOrder& o) const {
        return at_least == o.at_least && value == o.value;
    }
};

// jet: level-major coordinates in Q, length N*(n+1).
ContactOrder contact_order(const std::vector<Rational>& jet, int n, const Ideal& a);

struct DivisorPart {
    Ideal ideal; // principal
    Rational coeff;
};

struct DivisorOrderValue {
    bool at_least = false;
    Rational value;
};

// F_D = sum_i q_i * F_{D_i}; saturation in any part with positive weight
// makes the total a lower bound.
DivisorOrderValue divisor_order(const std::vector<Rational>& jet, int n,
                                const std::vector<DivisorPart>& parts);

enum class OrderKind { Exact, AtLeast };

// Contact requirement on a jet: order of `ideal` along the jet is exactly
// `order`, or at least `order`. Exact requires order <= level; AtLeast
// requires order <= level+1.
struct ContactCondition {
    Ideal ideal;
    OrderKind kind = OrderKind::Exact;
    int order = 0;
};

// The pair (X, q*Y) with the Q-Gorenstein bookkeeping: Gorenstein index r,
// the ideal of the subscheme Z measuring the singular locus, the scaling l
// (the theorem is applied to the ideal a^l), and the stability level theta.
struct PairSpec {
    AffineScheme X;
    int r = 1;
    Ideal z_ideal;
    Ideal y_ideal;
    Rational q = Rational(1);
    int l = 1;
    int theta = 2;
    bool hypothesis_asserted = false;
    std::string name;
};

PairSpec make_pair_spec(AffineScheme X, int r, Ideal z_ideal, Ideal y_ideal, Rational q, int l,
                        int theta, bool hypothesis_asserted, std::string name = "");

// Conditions cutting out pi_n(A_e) inside L_n(A^N): the jet lies on X and
// has Z-contact order exactly e. Throws StabilityViolation when n < theta*e
// unless forced.
std::vector<ContactCondition> ae_conditions(const PairSpec& pair, int n, int e,
                                            bool force = false);

// Conditions for the stratum L_n^e(lY) = L_n(lY) cut with pi_n(A_e).
std::vector<ContactCondition> stratum_conditions(const PairSpec& pair, int n, int e,
                                                 bool force = false);

// Jacobian convenience constructor for the Z-ideal: valid for a
// hypersurface with Gorenstein index 1 only; the partials of the single
// generator together with the generator itself. Anything else must supply
// the Z-ideal by hand (UnsupportedShape).
Ideal jacobian_z_ideal(const AffineScheme& s);

} // namespace jetlog
