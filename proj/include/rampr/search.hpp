#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "rampr/catalog.hpp"
#include "rampr/coloring.hpp"
#include "rampr/config.hpp"
#include "rampr/verifier.hpp"

namespace rampr::search {

/// Budgets count explored nodes, never wall-clock time, so truncated runs
/// are reproducible. Parallel searches give each independent subsearch the
/// same node limit.
struct Budget {
    uint64_t node_limit = 50000000;
};

struct BudgetExceeded : std::runtime_error {
    uint64_t nodes;
    std::string phase;
    BudgetExceeded(uint64_t n, std::string ph)
        : std::runtime_error("node budget exceeded during " + ph), nodes(n),
          phase(std::move(ph)) {}
};

struct SearchStats {
    uint64_t nodes = 0;
};

struct RatioConstraint {
    std::string larger, smaller;
    uint64_t factor = 0; // require value(larger) > factor * value(smaller)
};

namespace detail {

struct Ticker {
    uint64_t limit;
    uint64_t* counter;
    std::string phase;
    void tick() const {
        if (++*counter > limit) throw BudgetExceeded(*counter, phase);
    }
};

// Partial evaluation of an expression under a partial assignment: either a
// known constant, affine (a*var + b) in exactly one unassigned variable, or
// opaque. Affine views are what let equation atoms be solved directly
// instead of enumerated.
struct AffineView {
    enum class Kind { Constant, Affine, Opaque } kind = Kind::Opaque;
    BigInt a, b;
    size_t var = SIZE_MAX;

    static AffineView constant(BigInt v) {
        AffineView r;
        r.kind = Kind::Constant;
        r.b = std::move(v);
        return r;
    }
    static AffineView affine(size_t var, BigInt a, BigInt b) {
        if (a.is_zero()) return constant(std::move(b));
        AffineView r;
        r.kind = Kind::Affine;
        r.var = var;
        r.a = std::move(a);
        r.b = std::move(b);
        return r;
    }
    static AffineView opaque() { return {}; }
};

struct Ctx {
    const Configuration* c;
    const FunctionTable* fns;
    std::vector<size_t> block_of;
    std::vector<const Atom*> must_atoms;
    bool has_or = false;
    std::map<std::string, size_t> var_idx;

    explicit Ctx(const Configuration& cfg, const FunctionTable& f) : c(&cfg), fns(&f) {
        block_of = cfg.block_map();
        cfg.formula.top_conjuncts(must_atoms);
        has_or = contains_or(cfg.formula);
        for (size_t i = 0; i < cfg.vars.size(); ++i) var_idx[cfg.vars[i]] = i;
    }

    static bool contains_or(const Formula& f) {
        if (f.kind() == Formula::Kind::Or) return true;
        if (f.kind() == Formula::Kind::And)
            for (const auto& k : f.children())
                if (contains_or(k)) return true;
        return false;
    }
};

inline AffineView affine_eval(const Expr& e, const Ctx& ctx,
                              const std::vector<std::optional<uint64_t>>& vals) {
    using K = AffineView::Kind;
    switch (e.kind()) {
    case Expr::Kind::Const:
        return AffineView::constant(e.value());
    case Expr::Kind::Var: {
        size_t i = ctx.var_idx.at(e.name());
        if (vals[i]) return AffineView::constant(BigInt(*vals[i]));
        return AffineView::affine(i, BigInt(1), BigInt());
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        AffineView l = affine_eval(e.lhs(), ctx, vals);
        if (l.kind == K::Opaque) return AffineView::opaque();
        AffineView r = affine_eval(e.rhs(), ctx, vals);
        if (r.kind == K::Opaque) return AffineView::opaque();
        bool sub = e.kind() == Expr::Kind::Sub;
        BigInt rb = sub ? -r.b : r.b;
        BigInt ra = sub ? -r.a : r.a;
        if (l.kind == K::Constant && r.kind == K::Constant)
            return AffineView::constant(l.b + rb);
        if (l.kind == K::Constant)
            return AffineView::affine(r.var, ra, l.b + rb);
        if (r.kind == K::Constant)
            return AffineView::affine(l.var, l.a, l.b + rb);
        if (l.var == r.var)
            return AffineView::affine(l.var, l.a + ra, l.b + rb);
        return AffineView::opaque();
    }
    case Expr::Kind::Mul: {
        AffineView l = affine_eval(e.lhs(), ctx, vals);
        if (l.kind == K::Opaque) return AffineView::opaque();
        AffineView r = affine_eval(e.rhs(), ctx, vals);
        if (r.kind == K::Opaque) return AffineView::opaque();
        if (l.kind == K::Constant && r.kind == K::Constant)
            return AffineView::constant(l.b * r.b);
        if (l.kind == K::Constant)
            return AffineView::affine(r.var, l.b * r.a, l.b * r.b);
        if (r.kind == K::Constant)
            return AffineView::affine(l.var, r.b * l.a, r.b * l.b);
        return AffineView::opaque();
    }
    case Expr::Kind::Pow: {
        AffineView ex = affine_eval(e.rhs(), ctx, vals);
        if (ex.kind != K::Constant) return AffineView::opaque();
        if (ex.b.is_negative()) return AffineView::opaque(); // error surfaces at full eval
        if (ex.b.is_zero()) return AffineView::constant(BigInt(1));
        AffineView base = affine_eval(e.lhs(), ctx, vals);
        if (ex.b == BigInt(1)) return base;
        if (base.kind == K::Constant) {
            try {
                return AffineView::constant(BigInt::pow(base.b, ex.b.to_u64()));
            } catch (const std::overflow_error&) {
                return AffineView::opaque();
            }
        }
        return AffineView::opaque();
    }
    case Expr::Kind::Apply: {
        AffineView arg = affine_eval(e.lhs(), ctx, vals);
        if (arg.kind != K::Constant || arg.b.sign() < 0) return AffineView::opaque();
        try {
            return AffineView::constant(ctx.fns->apply(e.name(), arg.b));
        } catch (const EvalError&) {
            return AffineView::opaque();
        } catch (const std::overflow_error&) {
            return AffineView::opaque();
        }
    }
    }
    return AffineView::opaque();
}

// Three-valued truth of an atom / formula under a partial assignment.
inline std::optional<bool> atom_eval3(const Atom& a, const Ctx& ctx,
                                      const std::vector<std::optional<uint64_t>>& vals) {
    AffineView l = affine_eval(a.lhs, ctx, vals);
    if (l.kind != AffineView::Kind::Constant) return std::nullopt;
    AffineView r = affine_eval(a.rhs, ctx, vals);
    if (r.kind != AffineView::Kind::Constant) return std::nullopt;
    switch (a.cmp) {
    case Atom::Cmp::Eq: return l.b == r.b;
    case Atom::Cmp::Neq: return l.b != r.b;
    case Atom::Cmp::Lt: return l.b < r.b;
    }
    return std::nullopt;
}

inline std::optional<bool> formula_eval3(const Formula& f, const Ctx& ctx,
                                         const std::vector<std::optional<uint64_t>>& vals) {
    switch (f.kind()) {
    case Formula::Kind::Leaf:
        return atom_eval3(f.atom(), ctx, vals);
    case Formula::Kind::And: {
        bool unknown = false;
        for (const auto& k : f.children()) {
            auto v = formula_eval3(k, ctx, vals);
            if (!v) unknown = true;
            else if (!*v) return false;
        }
        if (unknown) return std::nullopt;
        return true;
    }
    case Formula::Kind::Or: {
        bool unknown = false;
        for (const auto& k : f.children()) {
            auto v = formula_eval3(k, ctx, vals);
            if (!v) unknown = true;
            else if (*v) return true;
        }
        if (unknown) return std::nullopt;
        return false;
    }
    }
    return std::nullopt;
}

struct Problem {
    const Ctx* ctx;
    uint64_t N = 0;
    const std::vector<uint32_t>* colors = nullptr; // colors[i-1] = color of i; null = ignore
    std::vector<std::optional<uint64_t>> fixed;    // by var index
    std::vector<std::optional<uint32_t>> locked_block_colors;
    std::vector<std::tuple<size_t, size_t, uint64_t>> ratios; // (larger, smaller, factor)
    std::optional<uint64_t> touch; // require some variable to take this value
};

class Solver {
public:
    Solver(const Problem& p, Ticker t) : p_(p), tick_(t) {
        size_t nv = p.ctx->c->vars.size();
        vals_.assign(nv, std::nullopt);
        block_color_.assign(p.ctx->c->blocks.size(), std::nullopt);
        if (!p.locked_block_colors.empty())
            for (size_t b = 0; b < block_color_.size(); ++b)
                block_color_[b] = p.locked_block_colors[b];
    }

    std::optional<Witness> run() {
        // Seat the pre-assigned values through the same checks as search
        // assignments, so fixed pairs respect colors and blocks.
        std::vector<size_t> fixed_order;
        for (size_t i = 0; i < vals_.size(); ++i)
            if (i < p_.fixed.size() && p_.fixed[i]) fixed_order.push_back(i);
        if (!seat_fixed(fixed_order, 0)) return std::nullopt;
        if (dfs()) {
            Witness w;
            w.values.reserve(vals_.size());
            for (auto& v : vals_) w.values.push_back(*v);
            for (auto& bc : block_color_) w.block_colors.push_back(bc ? *bc : 0);
            return w;
        }
        return std::nullopt;
    }

private:
    bool seat_fixed(const std::vector<size_t>& order, size_t at) {
        if (at == order.size()) return true;
        size_t i = order[at];
        return try_assign(i, *p_.fixed[i], [&] { return seat_fixed(order, at + 1); });
    }

    template <class Next>
    bool try_assign(size_t i, uint64_t n, Next&& next) {
        if (n < 1 || n > p_.N) return false;
        size_t b = p_.ctx->block_of[i];
        std::optional<uint32_t> saved = block_color_[b];
        if (p_.colors) {
            uint32_t col = (*p_.colors)[n - 1];
            if (saved && *saved != col) return false;
            block_color_[b] = col;
        }
        vals_[i] = n;
        bool ok = ratios_ok(i) && std::forward<Next>(next)();
        if (!ok) {
            vals_[i] = std::nullopt;
            block_color_[b] = saved;
        }
        return ok;
    }

    bool ratios_ok(size_t just) const {
        for (const auto& [big, small, factor] : p_.ratios) {
            if (big != just && small != just) continue;
            if (!vals_[big] || !vals_[small]) continue;
            // strict: value(big) > factor * value(small), exact arithmetic
            if (!(BigInt(*vals_[big]) > BigInt(factor) * BigInt(*vals_[small]))) return false;
        }
        return true;
    }

    // Forced values from must-hold equation atoms that became affine in one
    // variable. Returns false when some must-atom is already violated.
    bool propagate(std::vector<std::optional<uint64_t>>& forced) {
        for (const Atom* a : p_.ctx->must_atoms) {
            AffineView l, r;
            try {
                l = affine_eval(a->lhs, *p_.ctx, vals_);
                r = affine_eval(a->rhs, *p_.ctx, vals_);
            } catch (const std::overflow_error&) {
                return false; // value beyond any admissible bound
            }
            using K = AffineView::Kind;
            if (l.kind == K::Opaque || r.kind == K::Opaque) continue;
            if (l.kind == K::Constant && r.kind == K::Constant) {
                bool ok = a->cmp == Atom::Cmp::Eq    ? l.b == r.b
                          : a->cmp == Atom::Cmp::Neq ? l.b != r.b
                                                     : l.b < r.b;
                if (!ok) return false;
                continue;
            }
            if (a->cmp != Atom::Cmp::Eq) continue;
            // a1*v + b1 = a2*v' + b2 with at most one variable in play
            BigInt coef, rhs;
            size_t var;
            if (l.kind == K::Affine && r.kind == K::Affine) {
                if (l.var != r.var) continue;
                coef = l.a - r.a;
                rhs = r.b - l.b;
                var = l.var;
                if (coef.is_zero()) {
                    if (!rhs.is_zero()) return false;
                    continue;
                }
            } else if (l.kind == K::Affine) {
                coef = l.a;
                rhs = r.b - l.b;
                var = l.var;
            } else {
                coef = r.a;
                rhs = l.b - r.b;
                var = r.var;
            }
            if (coef.is_negative()) {
                coef = -coef;
                rhs = -rhs;
            }
            if (rhs.sign() <= 0) return false; // solution would be < 1
            auto [q, rem] = BigInt::divmod(rhs, coef);
            if (!rem.is_zero()) return false;
            if (!q.fits_u64()) return false;
            uint64_t val = q.to_u64();
            if (val < 1 || val > p_.N) return false;
            if (forced[var] && *forced[var] != val) return false;
            forced[var] = val;
        }
        return true;
    }

    bool dfs() {
        std::vector<std::optional<uint64_t>> forced(vals_.size(), std::nullopt);
        if (!propagate(forced)) return false;
        if (p_.ctx->has_or) {
            auto v3 = formula_eval3(p_.ctx->c->formula, *p_.ctx, vals_);
            if (v3 && !*v3) return false;
        }

        size_t next = vals_.size();
        size_t unassigned = 0;
        for (size_t i = 0; i < vals_.size(); ++i)
            if (!vals_[i]) {
                ++unassigned;
                if (next == vals_.size()) next = i;
            }

        if (next == vals_.size()) return accept();

        if (forced[next]) {
            if (vals_[next]) return dfs(); // already seated (cannot happen, but safe)
            tick_.tick();
            return try_assign(next, *forced[next], [&] { return dfs(); });
        }

        bool need_touch = false;
        if (p_.touch && unassigned == 1) {
            need_touch = true;
            for (const auto& v : vals_)
                if (v && *v == *p_.touch) need_touch = false;
        }
        if (need_touch) {
            tick_.tick();
            return try_assign(next, *p_.touch, [&] { return dfs(); });
        }

        for (uint64_t n = 1; n <= p_.N; ++n) {
            tick_.tick();
            if (try_assign(next, n, [&] { return dfs(); })) return true;
        }
        return false;
    }

    bool accept() {
        if (p_.touch) {
            bool touched = false;
            for (const auto& v : vals_)
                if (*v == *p_.touch) touched = true;
            if (!touched) return false;
        }
        auto lookup = [&](const std::string& name) -> std::optional<BigInt> {
            auto it = p_.ctx->var_idx.find(name);
            if (it == p_.ctx->var_idx.end() || !vals_[it->second]) return std::nullopt;
            return BigInt(*vals_[it->second]);
        };
        try {
            return formula_holds(p_.ctx->c->formula, lookup, *p_.ctx->fns);
        } catch (const std::overflow_error&) {
            return false;
        }
    }

    const Problem& p_;
    Ticker tick_;
    std::vector<std::optional<uint64_t>> vals_;
    std::vector<std::optional<uint32_t>> block_color_;
};

inline std::optional<Witness> solve(const Problem& p, const Budget& budget, SearchStats& stats,
                                    const std::string& phase) {
    Solver s(p, Ticker{budget.node_limit, &stats.nodes, phase});
    return s.run();
}

} // namespace detail

/// Lexicographically least block-monochromatic witness with values in [1..N].
inline std::optional<Witness> find_witness(const Configuration& c, const Coloring& col,
                                           uint64_t N, const FunctionTable& fns,
                                           const Budget& budget, SearchStats& stats,
                                           const std::vector<RatioConstraint>& ratios = {}) {
    c.validate(fns);
    if (col.domain_bound() < N)
        throw ConfigError("coloring does not cover [1..N]");
    detail::Ctx ctx(c, fns);
    detail::Problem p;
    p.ctx = &ctx;
    p.N = N;
    p.colors = &col.table();
    p.fixed.assign(c.vars.size(), std::nullopt);
    p.locked_block_colors.assign(c.blocks.size(), std::nullopt);
    for (const auto& r : ratios)
        p.ratios.emplace_back(c.var_index(r.larger), c.var_index(r.smaller), r.factor);
    auto w = detail::solve(p, budget, stats, "witness search");
    if (w) verify_witness(c, *w, col, N, fns);
    return w;
}

/// find_witness with strict ratio constraints value(var_i) > factor*value(var_j).
inline std::optional<Witness> asymmetric_witness(const Configuration& c, const Coloring& col,
                                                 uint64_t N, const FunctionTable& fns,
                                                 const std::vector<RatioConstraint>& ratios,
                                                 const Budget& budget, SearchStats& stats) {
    return find_witness(c, col, N, fns, budget, stats, ratios);
}

namespace detail {

// Shared avoidance backtracking: extend colorings element by element with
// canonical symmetry breaking (color(1)=0, new colors introduced in order),
// pruning as soon as the prefix contains a block-monochromatic witness.
// Calls `on_depth(n)` after element n is validly colored; stops early when
// on_depth returns false.
struct AvoidanceSearch {
    const Ctx& ctx;
    uint32_t r;
    uint64_t N;
    const Budget& budget;
    SearchStats& stats;

    std::vector<uint32_t> colors;

    // Does the prefix [1..n] (colored) contain a witness using value n?
    bool prefix_has_witness(uint64_t n) {
        Problem p;
        p.ctx = &ctx;
        p.N = n;
        p.colors = &colors;
        p.fixed.assign(ctx.c->vars.size(), std::nullopt);
        p.locked_block_colors.assign(ctx.c->blocks.size(), std::nullopt);
        p.touch = n;
        return solve(p, budget, stats, "avoidance pruning").has_value();
    }

    // Depth-first over colorings; returns true if some coloring of [1..N]
    // avoids all witnesses.
    bool run(const std::function<bool(uint64_t)>& on_depth) {
        colors.clear();
        return extend(1, 0, on_depth);
    }

private:
    bool extend(uint64_t n, uint32_t used, const std::function<bool(uint64_t)>& on_depth) {
        if (n > N) return true;
        uint32_t max_color = std::min(r - 1, used); // new colors in order
        for (uint32_t col = 0; col <= max_color; ++col) {
            colors.push_back(col);
            bool clean = !prefix_has_witness(n);
            if (clean && on_depth && !on_depth(n)) {
                colors.pop_back();
                return true; // caller asked to stop; treat as found
            }
            if (clean && extend(n + 1, std::max(used, col + 1), on_depth)) return true;
            colors.pop_back();
        }
        return false;
    }
};

} // namespace detail

/// Least N <= N_max such that every r-coloring of [1..N] contains a
/// block-monochromatic witness with values <= N; nullopt if no such N.
inline std::optional<uint64_t> forcing_number(const Configuration& c, uint32_t r, uint64_t N_max,
                                              const FunctionTable& fns, const Budget& budget,
                                              SearchStats& stats) {
    c.validate(fns);
    if (r < 1) throw ConfigError("forcing_number: need at least one color");
    detail::Ctx ctx(c, fns);
    detail::AvoidanceSearch av{ctx, r, N_max, budget, stats, {}};
    uint64_t deepest = 0;
    bool avoider_at_nmax = av.run([&](uint64_t n) {
        deepest = std::max(deepest, n);
        return true;
    });
    if (avoider_at_nmax) return std::nullopt;
    return deepest + 1;
}

/// Lexicographically least r-coloring of [1..N] with no block-monochromatic
/// witness, under the canonical symmetry-broken search order.
inline std::optional<Coloring> avoiding_coloring(const Configuration& c, uint32_t r, uint64_t N,
                                                 const FunctionTable& fns, const Budget& budget,
                                                 SearchStats& stats) {
    c.validate(fns);
    if (r < 1) throw ConfigError("avoiding_coloring: need at least one color");
    detail::Ctx ctx(c, fns);
    detail::AvoidanceSearch av{ctx, r, N, budget, stats, {}};
    if (!av.run(nullptr)) return std::nullopt;
    return Coloring::explicit_table(av.colors, r);
}

enum class HMode { Uniform, PerPair };

inline const char* to_string(HMode m) { return m == HMode::Uniform ? "uniform" : "perpair"; }

struct GoodPairGraph {
    std::vector<uint64_t> vertices; // ascending members of the home class
    std::vector<std::vector<uint8_t>> adj;
    std::map<std::pair<size_t, size_t>, Witness> certificates;
    uint64_t h_cap = 1;
};

namespace detail {

inline bool residual_satisfiable(const Ctx& ctx, uint64_t h1, uint64_t h2, uint64_t N,
                                 const std::vector<uint32_t>* colors,
                                 const std::vector<std::optional<uint32_t>>& locked,
                                 const Budget& budget, SearchStats& stats,
                                 std::optional<Witness>* out) {
    Problem p;
    p.ctx = &ctx;
    p.N = N;
    p.colors = colors;
    p.fixed.assign(ctx.c->vars.size(), std::nullopt);
    const auto& [vx, vy] = *ctx.c->ramsey;
    p.fixed[ctx.var_idx.at(vx)] = h1;
    p.fixed[ctx.var_idx.at(vy)] = h2;
    p.locked_block_colors = locked;
    auto w = solve(p, budget, stats, "good-pair residual");
    if (out) *out = w;
    return w.has_value();
}

// Default H-cap: the largest h whose residual for (x,y)=(h-1,h) is
// satisfiable within N, colors ignored. Keeps vacuous isolated vertices from
// inflating cliques.
inline uint64_t default_h_cap(const Ctx& ctx, uint64_t N, const Budget& budget,
                              SearchStats& stats) {
    std::vector<std::optional<uint32_t>> no_locks(ctx.c->blocks.size(), std::nullopt);
    for (uint64_t h = N; h >= 2; --h) {
        if (residual_satisfiable(ctx, h - 1, h, N, nullptr, no_locks, budget, stats, nullptr))
            return h;
    }
    return 1;
}

} // namespace detail

/// The graph on the home color class whose edges are pairs (h1,h2) admitting
/// a block-monochromatic witness: substituting (x,y)=(h1,h2), the remaining
/// first-block variables must take the home color, and each later block a
/// fixed color (Uniform: the given aux colors) or any single color (PerPair).
inline GoodPairGraph good_pair_graph(const Configuration& c, const Coloring& col, uint64_t N,
                                     uint32_t home_color, HMode mode,
                                     const std::vector<uint32_t>& aux_colors,
                                     const FunctionTable& fns, const Budget& budget,
                                     SearchStats& stats,
                                     std::optional<uint64_t> h_cap_override = std::nullopt) {
    c.validate(fns);
    if (!c.ramsey) throw ConfigError("good_pair_graph: configuration has no ramsey pair");
    if (col.domain_bound() < N) throw ConfigError("coloring does not cover [1..N]");
    if (home_color >= col.num_colors()) throw ConfigError("good_pair_graph: bad home color");
    if (mode == HMode::Uniform && aux_colors.size() != c.blocks.size() - 1)
        throw ConfigError("good_pair_graph: need one aux color per non-first block");
    detail::Ctx ctx(c, fns);

    GoodPairGraph g;
    g.h_cap = h_cap_override ? *h_cap_override : detail::default_h_cap(ctx, N, budget, stats);
    for (uint64_t h = 1; h <= std::min(g.h_cap, col.domain_bound()); ++h)
        if (col.color_of(h) == home_color) g.vertices.push_back(h);

    std::vector<std::optional<uint32_t>> locked(c.blocks.size(), std::nullopt);
    locked[0] = home_color;
    if (mode == HMode::Uniform)
        for (size_t b = 1; b < c.blocks.size(); ++b) locked[b] = aux_colors[b - 1];

    size_t V = g.vertices.size();
    g.adj.assign(V, std::vector<uint8_t>(V, 0));
    for (size_t i = 0; i < V; ++i) {
        for (size_t j = i + 1; j < V; ++j) {
            std::optional<Witness> w;
            if (detail::residual_satisfiable(ctx, g.vertices[i], g.vertices[j], N, &col.table(),
                                             locked, budget, stats, &w)) {
                verify_witness(c, *w, col, N, fns);
                g.adj[i][j] = g.adj[j][i] = 1;
                g.certificates.emplace(std::make_pair(i, j), std::move(*w));
            }
        }
    }
    return g;
}

struct RamseySetReport {
    HMode mode = HMode::Uniform;
    std::vector<uint64_t> best_H; // sorted
    uint64_t size = 0;
    uint32_t home_color = 0;
    std::vector<uint32_t> aux_colors; // Uniform mode only
    uint64_t N = 0;
    bool exhausted = true;
    uint64_t nodes = 0;
};

namespace detail {

// Branch-and-bound maximum clique with a greedy coloring upper bound.
class CliqueSolver {
public:
    CliqueSolver(const std::vector<std::vector<uint8_t>>& adj, Ticker tick)
        : adj_(adj), tick_(tick) {}

    // Largest clique; vertices explored in canonical ascending order.
    std::vector<size_t> max_clique(bool* truncated) {
        best_.clear();
        truncated_ = false;
        std::vector<size_t> R, P(adj_.size());
        for (size_t i = 0; i < adj_.size(); ++i) P[i] = i;
        try {
            expand(R, P);
        } catch (const BudgetExceeded&) {
            truncated_ = true;
        }
        if (truncated) *truncated = truncated_;
        return best_;
    }

    // Lexicographically least clique of exactly the given size, if any.
    std::optional<std::vector<size_t>> lex_least(size_t want) {
        if (want == 0) return std::vector<size_t>{};
        std::vector<size_t> R, P(adj_.size());
        for (size_t i = 0; i < adj_.size(); ++i) P[i] = i;
        if (lex_dfs(R, P, want)) return R;
        return std::nullopt;
    }

private:
    void expand(std::vector<size_t>& R, const std::vector<size_t>& P) {
        tick_.tick();
        if (P.empty()) {
            if (R.size() > best_.size()) best_ = R;
            return;
        }
        // Greedy coloring of P; class numbers bound the clique size
        // attainable from (R, P).
        std::vector<std::vector<size_t>> classes;
        for (size_t v : P) {
            size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool clash = false;
                for (size_t u : classes[c])
                    if (adj_[v][u]) { clash = true; break; }
                if (!clash) break;
            }
            if (c == classes.size()) classes.emplace_back();
            classes[c].push_back(v);
        }
        std::vector<size_t> sorted;
        std::vector<size_t> colnum;
        for (size_t c = 0; c < classes.size(); ++c)
            for (size_t v : classes[c]) {
                sorted.push_back(v);
                colnum.push_back(c);
            }
        for (size_t i = sorted.size(); i-- > 0;) {
            if (R.size() + colnum[i] + 1 <= best_.size()) return;
            size_t v = sorted[i];
            std::vector<size_t> P2;
            for (size_t j = 0; j < i; ++j)
                if (adj_[sorted[j]][v]) P2.push_back(sorted[j]);
            R.push_back(v);
            expand(R, P2);
            R.pop_back();
        }
    }

    bool lex_dfs(std::vector<size_t>& R, const std::vector<size_t>& P, size_t want) {
        tick_.tick();
        if (R.size() == want) return true;
        for (size_t i = 0; i < P.size(); ++i) {
            size_t v = P[i];
            std::vector<size_t> P2;
            for (size_t j = i + 1; j < P.size(); ++j)
                if (adj_[v][P[j]]) P2.push_back(P[j]);
            if (R.size() + 1 + P2.size() < want) continue;
            R.push_back(v);
            if (lex_dfs(R, P2, want)) return true;
            R.pop_back();
        }
        return false;
    }

    const std::vector<std::vector<uint8_t>>& adj_;
    Ticker tick_;
    std::vector<size_t> best_;
    bool truncated_ = false;
};

} // namespace detail

/// Maximum finite Ramsey set: the largest clique of the good-pair graph,
/// maximized over home colors and (in Uniform mode) over aux color tuples.
/// Ties break to the lexicographically least H, then the smallest home
/// color, then the lexicographically least aux tuple.
inline RamseySetReport max_ramsey_set(const Configuration& c, const Coloring& col, uint64_t N,
                                      HMode mode, const FunctionTable& fns, const Budget& budget,
                                      unsigned workers = 1,
                                      std::optional<uint64_t> h_cap_override = std::nullopt) {
    c.validate(fns);
    if (!c.ramsey) throw ConfigError("max_ramsey_set: configuration has no ramsey pair");
    if (col.domain_bound() < N) throw ConfigError("coloring does not cover [1..N]");
    uint32_t r = col.num_colors();
    size_t aux_blocks = c.blocks.size() - 1;

    uint64_t tuples = 1;
    if (mode == HMode::Uniform) {
        for (size_t i = 0; i < aux_blocks; ++i) {
            tuples *= r;
            if (tuples > 100000) throw ConfigError("max_ramsey_set: too many aux color tuples");
        }
    }
    uint64_t combos = static_cast<uint64_t>(r) * tuples;

    // The default H-cap ignores colors, so compute it once for all combos.
    SearchStats cap_stats;
    uint64_t h_cap;
    if (h_cap_override) {
        h_cap = *h_cap_override;
    } else {
        detail::Ctx ctx(c, fns);
        h_cap = detail::default_h_cap(ctx, N, budget, cap_stats);
    }

    struct ComboResult {
        std::vector<uint64_t> H;
        uint32_t home = 0;
        std::vector<uint32_t> aux;
        bool exhausted = true;
        uint64_t nodes = 0;
    };

    auto run_combo = [&](size_t combo) {
        ComboResult res;
        res.home = static_cast<uint32_t>(combo / tuples);
        uint64_t t = combo % tuples;
        res.aux.assign(aux_blocks, 0);
        for (size_t b = aux_blocks; b-- > 0;) {
            res.aux[b] = static_cast<uint32_t>(t % r);
            t /= r;
        }
        SearchStats stats;
        try {
            GoodPairGraph g = good_pair_graph(c, col, N, res.home, mode, res.aux, fns, budget,
                                              stats, h_cap);
            bool truncated = false;
            detail::CliqueSolver clique(g.adj, detail::Ticker{budget.node_limit, &stats.nodes,
                                                              "clique search"});
            auto ids = clique.max_clique(&truncated);
            if (truncated) {
                res.exhausted = false;
            } else if (auto lex = clique.lex_least(ids.size())) {
                ids = *lex;
            }
            for (size_t id : ids) res.H.push_back(g.vertices[id]);
            std::sort(res.H.begin(), res.H.end());
        } catch (const BudgetExceeded&) {
            res.exhausted = false;
        }
        res.nodes = stats.nodes;
        return res;
    };

    std::vector<ComboResult> results(combos);
    if (workers <= 1 || combos <= 1) {
        for (size_t i = 0; i < combos; ++i) results[i] = run_combo(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> cursor{0};
        std::vector<std::exception_ptr> errors(combos);
        unsigned nw = static_cast<unsigned>(std::min<uint64_t>(workers, combos));
        for (unsigned w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                size_t i;
                while ((i = cursor.fetch_add(1)) < combos) {
                    try {
                        results[i] = run_combo(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    RamseySetReport best;
    best.mode = mode;
    best.N = N;
    best.nodes = cap_stats.nodes;
    bool first = true;
    for (size_t i = 0; i < combos; ++i) {
        const auto& res = results[i];
        best.nodes += res.nodes;
        best.exhausted = best.exhausted && res.exhausted;
        bool better = first;
        if (!first) {
            if (res.H.size() != best.size)
                better = res.H.size() > best.size;
            else if (res.H != best.best_H)
                better = std::lexicographical_compare(res.H.begin(), res.H.end(),
                                                      best.best_H.begin(), best.best_H.end());
        }
        if (better) {
            best.best_H = res.H;
            best.size = res.H.size();
            best.home_color = res.home;
            best.aux_colors = res.aux;
            first = false;
        }
    }
    if (mode == HMode::PerPair) best.aux_colors.clear();
    return best;
}

/// Sample regimes concentrate on pairs where b dominates a, the finite
/// shadow of the Ramsey-pair growth condition.
struct SampleSpec {
    enum class Regime { AllPairs, SquareGap, PowerGap, ExpGap, MultipleGap };
    uint64_t a_lo = 1, a_hi = 100, b_hi = 100;
    Regime regime = Regime::SquareGap;
    uint64_t k = 2; // exponent for PowerGap, multiplier for MultipleGap

    std::vector<std::pair<uint64_t, uint64_t>> generate() const {
        std::vector<std::pair<uint64_t, uint64_t>> out;
        for (uint64_t a = a_lo; a <= a_hi; ++a) {
            uint64_t lo = a + 1;
            switch (regime) {
            case Regime::AllPairs: break;
            case Regime::SquareGap: lo = std::max(lo, a * a); break;
            case Regime::PowerGap: {
                BigInt bound = BigInt::pow(BigInt(a), k);
                if (!bound.fits_u64() || bound.to_u64() > b_hi) lo = b_hi + 1;
                else lo = std::max(lo, bound.to_u64());
                break;
            }
            case Regime::ExpGap: {
                if (a >= 63) { lo = b_hi + 1; break; }
                lo = std::max(lo, uint64_t(1) << a);
                break;
            }
            case Regime::MultipleGap: lo = std::max(lo, k * a); break;
            }
            for (uint64_t b = lo; b <= b_hi; ++b) out.emplace_back(a, b);
        }
        return out;
    }

    std::string to_string() const {
        std::string reg = regime == Regime::AllPairs   ? "all"
                          : regime == Regime::SquareGap ? "square"
                          : regime == Regime::PowerGap  ? "pow" + std::to_string(k)
                          : regime == Regime::ExpGap    ? "exp"
                                                        : "mul" + std::to_string(k);
        return "a:" + std::to_string(a_lo) + ".." + std::to_string(a_hi) +
               ",b<=" + std::to_string(b_hi) + "," + reg;
    }
};

struct SeparatorReport {
    std::optional<size_t> winner; // first fully separating descriptor
    std::vector<uint64_t> failure_counts;
    std::vector<std::vector<std::pair<uint64_t, uint64_t>>> first_failures; // up to 5 each
    uint64_t samples = 0;
};

/// Hunt for a finite-image invariant separating f and g on all sampled
/// pairs: a descriptor whose value on f(a,b) differs from its value on
/// g(a,b) everywhere. An undefined iterated logarithm counts as a failure.
inline SeparatorReport separator_search(const Expr& f, const Expr& g,
                                        const std::vector<InvariantDescriptor>& family,
                                        const SampleSpec& samples,
                                        const FunctionTable& fns = FunctionTable::builtins()) {
    for (const auto& d : family) d.validate();
    auto pairs = samples.generate();
    SeparatorReport rep;
    rep.samples = pairs.size();
    rep.failure_counts.assign(family.size(), 0);
    rep.first_failures.assign(family.size(), {});

    std::vector<std::pair<BigInt, BigInt>> values;
    values.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        std::map<std::string, BigInt> env{{"x", BigInt(a)}, {"y", BigInt(b)}};
        values.emplace_back(eval(f, env, fns), eval(g, env, fns));
    }

    for (size_t d = 0; d < family.size(); ++d) {
        for (size_t i = 0; i < pairs.size(); ++i) {
            const auto& [fv, gv] = values[i];
            bool fail;
            if (fv.sign() <= 0 || gv.sign() <= 0) {
                fail = true; // invariants live on positive integers
            } else {
                auto sf = family[d].eval(fv);
                auto sg = family[d].eval(gv);
                fail = !sf.defined || !sg.defined || sf.index == sg.index;
            }
            if (fail) {
                ++rep.failure_counts[d];
                if (rep.first_failures[d].size() < 5)
                    rep.first_failures[d].push_back(pairs[i]);
            }
        }
        if (!rep.winner && rep.failure_counts[d] == 0 && rep.samples > 0)
            rep.winner = d;
    }
    return rep;
}

/// The descriptor family shipped with the CLI `separate` subcommand.
inline std::vector<InvariantDescriptor> default_separator_family() {
    using D = InvariantDescriptor;
    return {
        D::tuple({D::vp_mod(2, 2), D::lm_mod(2, 2)}),
        D::tuple({D::vp_mod(2, 2), D::lm_mod(2, 2), D::res_mod(2)}),
        D::tuple({D::vp_mod(2, 3), D::lm_mod(2, 3)}),
        D::tuple({D::vp_mod(3, 3), D::lm_mod(3, 3)}),
        D::tuple({D::smod(3), D::vp_mod(2, 2), D::lm_mod(2, 2)}),
        D::tuple({D::vp_mod(2, 4), D::lm_mod(2, 4), D::res_mod(3)}),
        D::lm_iter_mod(2, 2, 2),
        D::tuple({D::lm_iter_mod(2, 2, 2), D::lm_mod(2, 2)}),
        D::tuple({D::lm_iter_mod(2, 2, 3), D::lm_iter_mod(2, 3, 3)}),
        D::tuple({D::smod(5), D::vp_mod(5, 2), D::lm_mod(2, 3)}),
    };
}

/// Least N <= N_max such that every r-coloring of [1..N] contains a
/// Uniform-mode monochromatic Ramsey set H of the wanted size whose edge
/// witnesses stay within [1..N]. Exhaustive over colorings via the same
/// canonical avoidance backtracking as forcing_number.
inline std::optional<uint64_t> uniform_floor_threshold(const Configuration& c, uint32_t r,
                                                       uint64_t want, uint64_t N_max,
                                                       const FunctionTable& fns,
                                                       const Budget& budget,
                                                       SearchStats& stats) {
    c.validate(fns);
    if (!c.ramsey) throw ConfigError("uniform_floor_threshold: no ramsey pair");
    detail::Ctx ctx(c, fns);
    size_t aux_blocks = c.blocks.size() - 1;

    // Does the colored prefix [1..n] contain a uniform H of the wanted size?
    auto has_H = [&](const std::vector<uint32_t>& colors, uint64_t n) {
        uint64_t tuples = 1;
        for (size_t i = 0; i < aux_blocks; ++i) tuples *= r;
        for (uint32_t home = 0; home < r; ++home) {
            std::vector<uint64_t> verts;
            for (uint64_t h = 1; h <= n; ++h)
                if (colors[h - 1] == home) verts.push_back(h);
            if (verts.size() < want) continue;
            for (uint64_t t = 0; t < tuples; ++t) {
                std::vector<std::optional<uint32_t>> locked(c.blocks.size());
                locked[0] = home;
                uint64_t tt = t;
                for (size_t b = aux_blocks; b-- > 0;) {
                    locked[b + 1] = static_cast<uint32_t>(tt % r);
                    tt /= r;
                }
                std::vector<std::vector<uint8_t>> adj(verts.size(),
                                                      std::vector<uint8_t>(verts.size(), 0));
                for (size_t i = 0; i < verts.size(); ++i)
                    for (size_t j = i + 1; j < verts.size(); ++j)
                        if (detail::residual_satisfiable(ctx, verts[i], verts[j], n, &colors,
                                                         locked, budget, stats, nullptr))
                            adj[i][j] = adj[j][i] = 1;
                detail::CliqueSolver clique(adj, detail::Ticker{budget.node_limit, &stats.nodes,
                                                                "floor clique"});
                if (clique.lex_least(want)) return true;
            }
        }
        return false;
    };

    detail::AvoidanceSearch av{ctx, r, N_max, budget, stats, {}};
    uint64_t deepest = 0;
    // Reuse the avoidance skeleton but with the H-existence check as the
    // pruning condition instead of single-witness containment.
    std::vector<uint32_t>& colors = av.colors;
    std::function<bool(uint64_t, uint32_t)> extend = [&](uint64_t n, uint32_t used) -> bool {
        if (n > N_max) return true;
        uint32_t max_color = std::min(r - 1, used);
        for (uint32_t col = 0; col <= max_color; ++col) {
            colors.push_back(col);
            if (!has_H(colors, n)) {
                deepest = std::max(deepest, n);
                if (extend(n + 1, std::max(used, col + 1))) return true;
            }
            colors.pop_back();
        }
        return false;
    };
    if (extend(1, 0)) return std::nullopt;
    return deepest + 1;
}

} // namespace rampr::search
