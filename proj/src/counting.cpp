#include "jetlog/counting.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "jetlog/fq.hpp"

namespace jetlog {

namespace {

// --- compiled constraint rows over F_q ------------------------------------
//
// A row is one t-coefficient of one ideal generator pulled back along the
// universal jet, reduced mod q. Variables are level-major jet coefficients,
// so a row of t-level m only mentions variables of level <= m, and its
// linear part in the level-m block is the gradient of the generator at the
// base point. The enumeration leans on three consequences:
//   - rows can be checked level by level (early abort),
//   - once the base point is fixed and the system Jacobian has full row
//     rank, every remaining level contributes exactly q^(N-k) points,
//   - after enough levels are assigned every remaining row is affine in
//     the remaining variables, so the tail is a linear-system count.

struct CTerm {
    Fq::Elem coeff;
    std::vector<std::pair<std::uint16_t, std::uint8_t>> factors; // sorted by var
};

struct CRow {
    int tlevel = 0;
    bool is_system = false;
    int witness_group = -1; // -1: must vanish; otherwise member of that group
    Fq::Elem constant = 0;
    std::vector<CTerm> terms;
};

struct CPoly {
    Fq::Elem constant = 0;
    std::vector<CTerm> terms;
};

CPoly compile_poly(const Poly& p, const Fq& F) {
    CPoly out;
    for (const auto& [exps, coeff] : p.terms()) {
        Fq::Elem c = F.from_rational(coeff);
        if (c == 0) continue;
        CTerm t{c, {}};
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0)
                t.factors.emplace_back(static_cast<std::uint16_t>(i),
                                       static_cast<std::uint8_t>(exps[i]));
        if (t.factors.empty()) {
            out.constant = F.add(out.constant, c);
        } else {
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

Fq::Elem eval_cpoly(const CPoly& p, const Fq& F, const std::vector<Fq::Elem>& point) {
    Fq::Elem v = p.constant;
    for (const auto& t : p.terms) {
        Fq::Elem w = t.coeff;
        for (const auto& [var, exp] : t.factors) {
            Fq::Elem x = point[var];
            if (x == 0) { w = 0; break; }
            w = F.mul(w, exp == 1 ? x : F.pow(x, exp));
        }
        v = F.add(v, w);
    }
    return v;
}

Fq::Elem eval_row(const CRow& r, const Fq& F, const std::vector<Fq::Elem>& point) {
    Fq::Elem v = r.constant;
    for (const auto& t : r.terms) {
        Fq::Elem w = t.coeff;
        for (const auto& [var, exp] : t.factors) {
            Fq::Elem x = point[var];
            if (x == 0) { w = 0; break; }
            w = F.mul(w, exp == 1 ? x : F.pow(x, exp));
        }
        v = F.add(v, w);
    }
    return v;
}

// substitutes the values of all variables below `boundary_var`
CRow specialize_row(const CRow& r, const Fq& F, const std::vector<Fq::Elem>& point,
                    int boundary_var) {
    CRow out;
    out.tlevel = r.tlevel;
    out.is_system = r.is_system;
    out.witness_group = r.witness_group;
    out.constant = r.constant;
    for (const auto& t : r.terms) {
        Fq::Elem c = t.coeff;
        std::vector<std::pair<std::uint16_t, std::uint8_t>> rem;
        for (const auto& [var, exp] : t.factors) {
            if (static_cast<int>(var) < boundary_var) {
                Fq::Elem x = point[var];
                if (x == 0) { c = 0; break; }
                c = F.mul(c, exp == 1 ? x : F.pow(x, exp));
            } else {
                rem.emplace_back(var, exp);
            }
        }
        if (c == 0) continue;
        if (rem.empty()) {
            out.constant = F.add(out.constant, c);
            continue;
        }
        bool merged = false;
        for (auto& existing : out.terms) {
            if (existing.factors == rem) {
                existing.coeff = F.add(existing.coeff, c);
                merged = true;
                break;
            }
        }
        if (!merged) out.terms.push_back(CTerm{c, std::move(rem)});
    }
    out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                   [](const CTerm& t) { return t.coeff == 0; }),
                    out.terms.end());
    return out;
}

bool row_is_affine(const CRow& r) {
    for (const auto& t : r.terms)
        if (t.factors.size() > 1 || t.factors[0].second != 1) return false;
    return true;
}

struct Engine {
    const Fq& F;
    int N, n, total_vars, sys_gen_count;
    std::vector<CRow> root_rows;
    std::vector<int> group_tlevel;
    std::vector<std::vector<CPoly>> sys_grad; // per system gen, per base var

    std::uint64_t budget;
    std::atomic<std::uint64_t>* ops;
    std::atomic<bool>* abort_flag;

    std::uint64_t local_ops = 0;
    std::vector<Fq::Elem> point;

    Engine(const Fq& f, int N_, int n_, int sys_count, std::vector<CRow> rows,
           std::vector<int> group_levels, std::vector<std::vector<CPoly>> grad,
           std::uint64_t budget_, std::atomic<std::uint64_t>* ops_, std::atomic<bool>* abort_)
        : F(f), N(N_), n(n_), total_vars(N_ * (n_ + 1)), sys_gen_count(sys_count),
          root_rows(std::move(rows)), group_tlevel(std::move(group_levels)),
          sys_grad(std::move(grad)), budget(budget_), ops(ops_), abort_flag(abort_) {
        point.assign(static_cast<std::size_t>(total_vars), 0);
    }

    bool charge(std::uint64_t amount) {
        local_ops += amount;
        if (local_ops >= 4096) {
            std::uint64_t total = ops->fetch_add(local_ops) + local_ops;
            local_ops = 0;
            if (total > budget) {
                abort_flag->store(true);
                return false;
            }
        }
        return !abort_flag->load(std::memory_order_relaxed);
    }

    void flush_ops() { ops->fetch_add(local_ops); local_ops = 0; }

    int jacobian_rank() const {
        // rank of the system gradients at the assigned base point
        std::vector<std::vector<Fq::Elem>> m;
        for (const auto& grads : sys_grad) {
            std::vector<Fq::Elem> row(static_cast<std::size_t>(N));
            for (int i = 0; i < N; ++i) row[i] = eval_cpoly(grads[i], F, point);
            m.push_back(std::move(row));
        }
        int rank = 0;
        for (int col = 0; col < N && rank < static_cast<int>(m.size()); ++col) {
            int pivot = -1;
            for (int r = rank; r < static_cast<int>(m.size()); ++r)
                if (m[r][col] != 0) { pivot = r; break; }
            if (pivot < 0) continue;
            std::swap(m[rank], m[pivot]);
            Fq::Elem inv = F.inv(m[rank][col]);
            for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
                if (m[r][col] == 0) continue;
                Fq::Elem factor = F.mul(m[r][col], inv);
                for (int c2 = col; c2 < N; ++c2)
                    m[r][c2] = F.sub(m[r][c2], F.mul(factor, m[rank][c2]));
            }
            ++rank;
        }
        return rank;
    }

    // exact count of the affine system given by `rows` over the variables
    // first_var..total_vars-1
    Integer gauss_count(const std::vector<CRow>& rows, int first_var) {
        int cols = total_vars - first_var;
        std::vector<std::vector<Fq::Elem>> m;
        m.reserve(rows.size());
        for (const auto& r : rows) {
            std::vector<Fq::Elem> row(static_cast<std::size_t>(cols) + 1, 0);
            for (const auto& t : r.terms) {
                int c = t.factors[0].first - first_var;
                row[c] = F.add(row[c], t.coeff);
            }
            row[cols] = F.neg(r.constant);
            m.push_back(std::move(row));
        }
        int rank = 0;
        for (int col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
            int pivot = -1;
            for (int r = rank; r < static_cast<int>(m.size()); ++r)
                if (m[r][col] != 0) { pivot = r; break; }
            if (pivot < 0) continue;
            std::swap(m[rank], m[pivot]);
            Fq::Elem inv = F.inv(m[rank][col]);
            for (int r = 0; r < static_cast<int>(m.size()); ++r) {
                if (r == rank || m[r][col] == 0) continue;
                Fq::Elem factor = F.mul(m[r][col], inv);
                for (int c2 = col; c2 <= cols; ++c2)
                    m[r][c2] = F.sub(m[r][c2], F.mul(factor, m[rank][c2]));
            }
            ++rank;
        }
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (m[r][cols] != 0) return Integer(0);
        return ipow(Integer(F.q()), static_cast<unsigned long>(cols - rank));
    }

    bool groups_pending(const std::vector<std::uint8_t>& sat, int lvl) const {
        for (std::size_t g = 0; g < group_tlevel.size(); ++g)
            if (group_tlevel[g] >= lvl && !sat[g]) return true;
        return false;
    }

    // pending: rows with tlevel >= lvl, specialized to the assignment of all
    // variables below lvl*N. Returns the number of completions.
    Integer descend(int lvl, const std::vector<CRow>& pending, const std::vector<std::uint8_t>& sat,
                    int sys_rank) {
        if (abort_flag->load(std::memory_order_relaxed)) return Integer(0);
        int remaining_levels = n + 1 - lvl;
        if (lvl > n) return Integer(1);

        if (!groups_pending(sat, lvl)) {
            if (pending.empty())
                return ipow(Integer(F.q()),
                            static_cast<unsigned long>(remaining_levels) *
                                static_cast<unsigned long>(N));
            bool all_system = std::all_of(pending.begin(), pending.end(),
                                          [](const CRow& r) { return r.is_system; });
            if (all_system && sys_rank == sys_gen_count && sys_gen_count > 0)
                return ipow(Integer(F.q()),
                            static_cast<unsigned long>(remaining_levels) *
                                static_cast<unsigned long>(N - sys_gen_count));
            if (std::all_of(pending.begin(), pending.end(), row_is_affine))
                return gauss_count(pending, lvl * N);
        }

        // split rows into this level's checks and later levels
        std::vector<const CRow*> future;
        std::vector<std::vector<const CRow*>> bucket(static_cast<std::size_t>(N));
        std::vector<const CRow*> level_witnesses;
        for (const auto& r : pending) {
            if (r.tlevel > lvl) {
                future.push_back(&r);
            } else if (r.witness_group >= 0) {
                level_witnesses.push_back(&r);
            } else {
                int maxvar = 0;
                for (const auto& t : r.terms)
                    for (const auto& [var, exp] : t.factors) maxvar = std::max(maxvar, (int)var);
                bucket[static_cast<std::size_t>(maxvar - lvl * N)].push_back(&r);
            }
        }

        Integer count(0);
        const int base = lvl * N;
        const std::uint32_t q = F.q();
        std::vector<int> cursor(static_cast<std::size_t>(N), -1);
        int pos = 0;
        while (pos >= 0) {
            ++cursor[pos];
            if (cursor[pos] >= static_cast<int>(q)) { --pos; continue; }
            point[base + pos] = static_cast<Fq::Elem>(cursor[pos]);
            if (!charge(1)) return count;
            bool ok = true;
            for (const CRow* r : bucket[pos])
                if (eval_row(*r, F, point) != 0) { ok = false; break; }
            if (!ok) continue;
            if (pos + 1 < N) { ++pos; cursor[pos] = -1; continue; }
            count += boundary(lvl, future, level_witnesses, sat, sys_rank);
        }
        return count;
    }

    // a full level assignment passed its checks; resolve witnesses, shrink
    // the remaining rows, then recurse
    Integer boundary(int lvl, const std::vector<const CRow*>& future,
                     const std::vector<const CRow*>& level_witnesses,
                     const std::vector<std::uint8_t>& sat, int sys_rank) {
        std::vector<std::uint8_t> child_sat = sat;
        for (const CRow* r : level_witnesses)
            if (!child_sat[r->witness_group] && eval_row(*r, F, point) != 0)
                child_sat[r->witness_group] = 1;

        int boundary_var = (lvl + 1) * N;
        std::vector<CRow> child_pending;
        child_pending.reserve(future.size());
        for (const CRow* r : future) {
            if (r->witness_group >= 0 && child_sat[r->witness_group]) continue;
            CRow s = specialize_row(*r, F, point, boundary_var);
            if (s.terms.empty()) {
                if (s.witness_group >= 0) {
                    if (s.constant != 0) child_sat[s.witness_group] = 1;
                } else if (s.constant != 0) {
                    return Integer(0); // resolved vanish row failed
                }
            } else {
                child_pending.push_back(std::move(s));
            }
        }
        // exact-order witnesses must have fired by their own level
        for (std::size_t g = 0; g < group_tlevel.size(); ++g)
            if (group_tlevel[g] <= lvl && !child_sat[g]) return Integer(0);

        int child_rank = sys_rank;
        if (lvl == 0 && !sys_grad.empty()) child_rank = jacobian_rank();
        return descend(lvl + 1, child_pending, child_sat, child_rank);
    }

    // level-0 assignments restricted to flat indices [lo, hi)
    Integer run_range(std::uint64_t lo, std::uint64_t hi) {
        std::vector<const CRow*> future;
        std::vector<const CRow*> level0_vanish, level0_witness;
        for (const auto& r : root_rows) {
            if (r.tlevel > 0) future.push_back(&r);
            else if (r.witness_group >= 0) level0_witness.push_back(&r);
            else level0_vanish.push_back(&r);
        }
        std::vector<std::uint8_t> sat(group_tlevel.size(), 0);

        Integer count(0);
        for (std::uint64_t f = lo; f < hi; ++f) {
            if (!charge(1)) break;
            std::uint64_t rest = f;
            for (int i = N - 1; i >= 0; --i) {
                point[i] = static_cast<Fq::Elem>(rest % F.q());
                rest /= F.q();
            }
            bool ok = true;
            for (const CRow* r : level0_vanish)
                if (eval_row(*r, F, point) != 0) { ok = false; break; }
            if (!ok) continue;
            count += boundary(0, future, level0_witness, sat, -1);
        }
        flush_ops();
        return count;
    }
};

struct CompiledQuery {
    int N = 0, n = 0, sys_gen_count = 0;
    std::vector<CRow> rows;
    std::vector<int> group_tlevel;
    std::vector<std::vector<CPoly>> sys_grad;
    bool impossible = false; // a witness group with no usable rows
};

CompiledQuery compile_query(const CountQuery& query, const Fq& F) {
    const AffineScheme& scheme = query.scheme;
    const int N = scheme.ambient_dim;
    const int n = query.level;

    // full-precision vanishing ideals form the system; everything else is a
    // partial-order condition
    std::vector<const Ideal*> system_ideals;
    if (!scheme.ideal.is_zero_ideal()) system_ideals.push_back(&scheme.ideal);
    std::vector<const ContactCondition*> partial;
    for (const auto& c : query.conditions) {
        if (!(*c.ideal.vars() == *scheme.ideal.vars()))
            throw DomainMismatch("condition ideal over a different variable set");
        if (c.kind == OrderKind::AtLeast) {
            if (c.order < 0 || c.order > n + 1)
                throw PrecisionTooLow("contact order bound exceeds level+1");
            if (c.order == 0) continue; // trivially true
            if (c.order == n + 1 && !c.ideal.is_zero_ideal()) system_ideals.push_back(&c.ideal);
            else if (!c.ideal.is_zero_ideal()) partial.push_back(&c);
        } else {
            if (c.order < 0 || c.order > n)
                throw PrecisionTooLow("exact contact order exceeds jet level");
            partial.push_back(&c);
        }
    }

    CompiledQuery out;
    out.N = N;
    out.n = n;

    auto jet_rows = [&](const Ideal& ideal) {
        AffineScheme tmp = make_affine_scheme(N, ideal, std::nullopt);
        return jet_equations(tmp, n).equations; // [gen][level]
    };

    for (const Ideal* ideal : system_ideals) {
        for (const auto& per_gen : jet_rows(*ideal)) {
            ++out.sys_gen_count;
            for (int j = 0; j <= n; ++j) {
                CPoly p = compile_poly(per_gen[static_cast<std::size_t>(j)], F);
                if (p.terms.empty() && p.constant == 0) continue; // identically zero row
                CRow row;
                row.tlevel = j;
                row.is_system = true;
                row.constant = p.constant;
                row.terms = std::move(p.terms);
                out.rows.push_back(std::move(row));
            }
        }
    }
    // gradients of the system generators at the base point drive the
    // full-rank collapse
    for (const Ideal* ideal : system_ideals) {
        for (const auto& g : ideal->gens()) {
            std::vector<CPoly> grads;
            for (int i = 0; i < N; ++i) grads.push_back(compile_poly(g.partial_derivative(i), F));
            out.sys_grad.push_back(std::move(grads));
        }
    }

    for (const ContactCondition* c : partial) {
        auto per_gen_rows = jet_rows(c->ideal);
        const int vanish_below = c->order; // both kinds force vanishing below the order
        for (const auto& per_gen : per_gen_rows) {
            for (int j = 0; j < vanish_below; ++j) {
                CPoly p = compile_poly(per_gen[static_cast<std::size_t>(j)], F);
                if (p.terms.empty() && p.constant == 0) continue;
                CRow row;
                row.tlevel = j;
                row.constant = p.constant;
                row.terms = std::move(p.terms);
                out.rows.push_back(std::move(row));
            }
        }
        if (c->kind == OrderKind::Exact) {
            int group = static_cast<int>(out.group_tlevel.size());
            out.group_tlevel.push_back(c->order);
            bool any = false;
            for (const auto& per_gen : per_gen_rows) {
                CPoly p = compile_poly(per_gen[static_cast<std::size_t>(c->order)], F);
                if (p.terms.empty() && p.constant == 0) continue; // can never witness
                CRow row;
                row.tlevel = c->order;
                row.witness_group = group;
                row.constant = p.constant;
                row.terms = std::move(p.terms);
                out.rows.push_back(std::move(row));
                any = true;
            }
            if (!any) out.impossible = true;
        }
    }
    return out;
}

} // namespace

Integer count_points(const CountQuery& query, const CountOptions& opts) {
    if (query.level < 0) throw Error("jet level must be >= 0");
    Fq F(query.q);
    CompiledQuery cq = compile_query(query, F);
    if (cq.impossible) return Integer(0);

    std::uint64_t space = 1;
    bool overflow = false;
    for (int i = 0; i < cq.N; ++i) {
        if (space > (1ULL << 62) / query.q) { overflow = true; break; }
        space *= query.q;
    }
    if (overflow) throw Error("level-0 space too large");

    std::atomic<std::uint64_t> ops{0};
    std::atomic<bool> abort_flag{false};

    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, 64);
    std::uint64_t chunk_count = std::min<std::uint64_t>(space, static_cast<std::uint64_t>(threads) * 8);
    if (chunk_count == 0) chunk_count = 1;

    std::vector<Integer> results(chunk_count, Integer(0));
    std::atomic<std::uint64_t> next_chunk{0};
    auto worker = [&]() {
        Engine engine(F, cq.N, cq.n, cq.sys_gen_count, cq.rows, cq.group_tlevel, cq.sys_grad,
                      opts.budget, &ops, &abort_flag);
        while (true) {
            std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunk_count || abort_flag.load()) break;
            std::uint64_t lo = space * c / chunk_count;
            std::uint64_t hi = space * (c + 1) / chunk_count;
            results[c] = engine.run_range(lo, hi);
        }
    };

    if (threads == 1 || chunk_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (abort_flag.load())
        throw BudgetExceeded("count_points: evaluation budget of " + std::to_string(opts.budget) +
                                 " exceeded (" + std::to_string(ops.load()) +
                                 " candidate evaluations performed)",
                             ops.load());

    Integer total(0);
    for (const auto& r : results) total += r;
    return total;
}

Integer count_stratum(const PairSpec& pair, int n, int e, std::uint64_t q, bool with_y,
                      const CountOptions& opts, bool force) {
    CountQuery query;
    query.scheme = pair.X;
    query.level = n;
    query.conditions = with_y ? stratum_conditions(pair, n, e, force)
                              : ae_conditions(pair, n, e, force);
    // the X-cut is already the scheme's own system
    std::erase_if(query.conditions, [&](const ContactCondition& c) {
        return c.kind == OrderKind::AtLeast && c.order == n + 1 && c.ideal == pair.X.ideal;
    });
    query.q = q;
    return count_points(query, opts);
}

namespace {

using Sample = std::pair<std::uint64_t, Integer>;

std::vector<Rational> lagrange_interpolate(const std::vector<Sample>& pts) {
    // sum_i y_i prod_{j != i} (x - x_j) / (x_i - x_j), coefficients ascending
    std::vector<Rational> acc(1, Rational(0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Rational> basis(1, Rational(1));
        Rational denom(1);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            // basis *= (x - x_j)
            basis.push_back(Rational(0));
            for (std::size_t k = basis.size() - 1; k > 0; --k)
                basis[k] = basis[k - 1] - basis[k] * Rational(Integer(pts[j].first));
            basis[0] = -basis[0] * Rational(Integer(pts[j].first));
            denom *= Rational(Integer(pts[i].first)) - Rational(Integer(pts[j].first));
        }
        Rational scale = Rational(pts[i].second) / denom;
        if (acc.size() < basis.size()) acc.resize(basis.size(), Rational(0));
        for (std::size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * scale;
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return acc;
}

Rational eval_rational_poly(const std::vector<Rational>& coeffs, const Integer& x) {
    Rational v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * Rational(x) + *it;
    return v;
}

DimEstimate estimate_from_counts(std::vector<Sample> samples) {
    if (samples.size() < 3) throw Error("estimate_dimension needs at least 3 primes");
    std::sort(samples.begin(), samples.end());
    DimEstimate est;
    for (const auto& [q, c] : samples) est.primes_used.push_back(q);

    bool all_zero = std::all_of(samples.begin(), samples.end(),
                                [](const Sample& s) { return s.second == 0; });
    if (all_zero) {
        est.dim = std::nullopt;
        est.count_polynomial = std::vector<Integer>{};
        est.consistent = true;
        return est;
    }

    // pure-monomial model c*q^d first: bundle-like counts determine the
    // dimension from very few samples
    if (samples.front().second > 0) {
        const auto& [q1, c1] = samples[samples.size() - 2];
        const auto& [q2, c2] = samples[samples.size() - 1];
        for (int d = 0; ipow(Integer(q1), static_cast<unsigned long>(d)) <= c1; ++d) {
            if (c1 * ipow(Integer(q2), static_cast<unsigned long>(d)) !=
                c2 * ipow(Integer(q1), static_cast<unsigned long>(d)))
                continue;
            Rational lead = Rational(c1) / Rational(ipow(Integer(q1), static_cast<unsigned long>(d)));
            if (!is_integer(lead)) break;
            bool match = std::all_of(samples.begin(), samples.end(), [&](const Sample& s) {
                return Rational(s.second) ==
                       lead * Rational(ipow(Integer(s.first), static_cast<unsigned long>(d)));
            });
            if (match) {
                est.dim = d;
                std::vector<Integer> poly(static_cast<std::size_t>(d) + 1, Integer(0));
                poly.back() = numerator(lead);
                est.count_polynomial = std::move(poly);
                est.consistent = true;
                return est;
            }
            break;
        }
    }

    // interpolate through all but the largest sample; the largest is the
    // held-out confirmation
    std::vector<Sample> support(samples.begin(), samples.end() - 1);
    std::vector<Rational> fit = lagrange_interpolate(support);
    const auto& holdout = samples.back();
    if (eval_rational_poly(fit, Integer(holdout.first)) == Rational(holdout.second)) {
        est.consistent = true;
        est.dim = fit.empty() ? std::optional<int>{} : std::optional<int>{(int)fit.size() - 1};
        bool integral = std::all_of(fit.begin(), fit.end(),
                                    [](const Rational& c) { return is_integer(c); });
        if (integral) {
            std::vector<Integer> poly;
            for (const auto& c : fit) poly.push_back(numerator(c));
            est.count_polynomial = std::move(poly);
        }
        return est;
    }

    std::vector<Rational> full = lagrange_interpolate(samples);
    est.consistent = false;
    est.dim = full.empty() ? std::optional<int>{} : std::optional<int>{(int)full.size() - 1};
    est.warning = "held-out count at q=" + std::to_string(holdout.first) +
                  " not reproduced; dim is the best-fit interpolation degree";
    return est;
}

DimEstimate estimate_adaptive_fn(const std::function<Integer(std::uint64_t)>& counter,
                                 std::vector<std::uint64_t> pool) {
    std::vector<Sample> samples;
    DimEstimate last;
    for (std::size_t k = 0; k < pool.size(); ++k) {
        samples.emplace_back(pool[k], counter(pool[k]));
        if (samples.size() < 4) continue;
        last = estimate_from_counts(samples);
        if (last.consistent) return last;
    }
    if (samples.size() >= 3) return estimate_from_counts(samples);
    throw Error("estimate_dimension: prime pool too small");
}

} // namespace

std::vector<std::uint64_t> default_prime_pool() {
    return {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
}

DimEstimate estimate_dimension(const AffineScheme& scheme, int n,
                               const std::vector<ContactCondition>& conditions,
                               std::vector<std::uint64_t> primes, const CountOptions& opts) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    if (primes.size() < 3) throw Error("estimate_dimension needs at least 3 primes");
    std::vector<Sample> samples;
    for (std::uint64_t q : primes) {
        CountQuery query{scheme, n, conditions, q};
        samples.emplace_back(q, count_points(query, opts));
    }
    return estimate_from_counts(std::move(samples));
}

DimEstimate estimate_dimension_adaptive(const AffineScheme& scheme, int n,
                                        const std::vector<ContactCondition>& conditions,
                                        const CountOptions& opts, std::vector<std::uint64_t> pool) {
    if (pool.empty()) pool = default_prime_pool();
    return estimate_adaptive_fn(
        [&](std::uint64_t q) {
            CountQuery query{scheme, n, conditions, q};
            return count_points(query, opts);
        },
        std::move(pool));
}

BundleReport bundle_ratio_check(const PairSpec& pair, int e, int n_min, int n_max,
                                std::uint64_t q, const CountOptions& opts, bool force) {
    if (!pair.X.expected_dim)
        throw Error("bundle_ratio_check needs the pair's ambient dimension (expected_dim)");
    BundleReport report;
    report.e = e;
    report.d = *pair.X.expected_dim;
    report.theta = pair.theta;
    report.q = q;

    int start = std::max(n_min, e); // an exact order e is visible from level e on
    std::map<int, Integer> counts;
    for (int m = start; m <= n_max + 1; ++m) counts[m] = count_stratum(pair, m, e, q, false, opts, true);

    Integer qd = ipow(Integer(q), static_cast<unsigned long>(report.d));
    bool any_points = false;
    report.all_ok = true;
    for (int m = start; m <= n_max; ++m) {
        BundleRow row;
        row.n = m;
        row.count_n = counts[m];
        row.count_n1 = counts[m + 1];
        row.in_regime = m >= pair.theta * e;
        if (row.count_n != 0) {
            any_points = true;
            row.ratio_defined = true;
            row.ratio = Rational(row.count_n1) / Rational(row.count_n);
        }
        if (row.in_regime) {
            if (row.count_n == 0 && row.count_n1 == 0) row.ok = true; // empty stratum
            else row.ok = row.ratio_defined && row.ratio == Rational(qd);
            if (!*row.ok) report.all_ok = false;
        }
        report.rows.push_back(std::move(row));
    }
    report.empty_stratum = !any_points;
    return report;
}

LinearBoundReport linear_bound_check(const AffineScheme& scheme, int n_max,
                                     const std::vector<std::uint64_t>& primes,
                                     const CountOptions& opts, const PairSpec* pair, int e) {
    if (!scheme.expected_dim)
        throw Error("linear_bound_check needs the scheme's declared dimension d'");
    LinearBoundReport report;
    report.dprime = *scheme.expected_dim;
    report.d = pair && pair->X.expected_dim ? *pair->X.expected_dim : scheme.ambient_dim;

    for (int n = 0; n <= n_max; ++n) {
        std::vector<ContactCondition> conds;
        if (pair) conds = ae_conditions(*pair, n, e);
        LinearBoundRow row;
        row.n = n;
        row.est = primes.empty()
                      ? estimate_dimension_adaptive(scheme, n, conds, opts)
                      : estimate_dimension(scheme, n, conds,
                                           std::vector<std::uint64_t>(primes.begin(), primes.end()),
                                           opts);
        row.bound = (n + 1) * report.dprime;
        row.ok = row.est.consistent && (!row.est.dim || *row.est.dim <= row.bound);
        report.rows.push_back(std::move(row));
    }

    // least-squares slope through the finite dimension estimates
    Rational sn(0), sd(0), snn(0), snd(0);
    int k = 0;
    for (const auto& row : report.rows) {
        if (!row.est.dim) continue;
        Rational nn(row.n), dd(*row.est.dim);
        sn += nn; sd += dd; snn += nn * nn; snd += nn * dd;
        ++k;
    }
    if (k >= 2 && Rational(k) * snn != sn * sn) {
        report.slope_defined = true;
        report.slope = (Rational(k) * snd - sn * sd) / (Rational(k) * snn - sn * sn);
        report.slope_lt_d = report.slope < Rational(report.d);
    }
    report.all_ok = report.slope_defined && report.slope_lt_d &&
                    std::all_of(report.rows.begin(), report.rows.end(),
                                [](const LinearBoundRow& r) { return r.ok; });
    return report;
}

std::map<std::pair<int, int>, DimEstimate> jet_dims_table(const PairSpec& pair, int n_max,
                                                          int e_max, const CountOptions& opts) {
    std::map<std::pair<int, int>, DimEstimate> table;
    for (int e = 0; e <= e_max; ++e) {
        for (int n = pair.theta * e; n <= n_max; ++n) {
            table[{e, n}] = estimate_adaptive_fn(
                [&](std::uint64_t q) { return count_stratum(pair, n, e, q, true, opts); },
                default_prime_pool());
        }
    }
    return table;
}

} // namespace jetlog
