#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rampr/json_io.hpp"

using namespace rampr;
using search::Budget;
using search::HMode;
using search::SearchStats;

TEST_SUITE_BEGIN("search");

static const FunctionTable& fns() { return FunctionTable::builtins(); }

TEST_CASE("find_witness: Schur under parity at N=20") {
    auto c = *catalog_lookup("schur");
    auto col = parse_coloring_spec("parity", 20);
    SearchStats st;
    auto w = search::find_witness(c, col, 20, fns(), Budget{}, st);
    REQUIRE(w.has_value());
    CHECK(w->values == std::vector<uint64_t>{2, 4, 6});
    CHECK(w->block_colors == std::vector<uint32_t>{0});
}

TEST_CASE("find_witness: the classical Schur-avoiding coloring has no witness at N=4") {
    auto c = *catalog_lookup("schur");
    auto col = parse_coloring_spec("explicit:0110", 4); // {1,4} | {2,3}
    SearchStats st;
    CHECK_FALSE(search::find_witness(c, col, 4, fns(), Budget{}, st).has_value());
}

TEST_CASE("find_witness matches the brute-force enumeration on catalog configs") {
    // covers the lexicographic-least contract, including the sum-product
    // configuration where the least witness starts at x=1
    std::vector<std::string> names{"schur", "pairwise-sum-product", "3ap", "product",
                                   "difference", "square-plus-y"};
    std::vector<std::string> colorings{"mono", "parity", "random(5,2)"};
    for (const auto& name : names) {
        auto c = *catalog_lookup(name);
        for (const auto& spec : colorings) {
            uint64_t N = 12;
            auto col = parse_coloring_spec(spec, N);
            SearchStats st;
            auto got = search::find_witness(c, col, N, fns(), Budget{}, st);
            oracles::BruteOptions opt;
            opt.coloring = &col;
            auto expect = oracles::brute_witness(c, N, opt);
            CAPTURE(name);
            CAPTURE(spec);
            REQUIRE(got.has_value() == expect.has_value());
            if (got) CHECK(got->values == expect->values);
        }
    }
}

TEST_CASE("find_witness: pairwise sum-product under one color starts at x=1") {
    // frozen from the brute enumeration: (1,2,3,2) satisfies x+y=z, xy=t, x!=y
    auto c = *catalog_lookup("pairwise-sum-product");
    auto col = parse_coloring_spec("mono", 10);
    SearchStats st;
    auto w = search::find_witness(c, col, 10, fns(), Budget{}, st);
    REQUIRE(w.has_value());
    CHECK(w->values == std::vector<uint64_t>{1, 2, 3, 2});
}

TEST_CASE("asymmetric witness: x+2y=z under parity with x>5y") {
    Configuration c = parse_config(
        "config { vars x y z; blocks (x y z); formula x + 2*y = z; }");
    auto col = parse_coloring_spec("parity", 20);
    SearchStats st;
    auto w = search::asymmetric_witness(c, col, 20, fns(), {{"x", "y", 5}}, Budget{}, st);
    REQUIRE(w.has_value());
    // frozen from enumerating triples <= 20: the all-odd {7,1,9} comes first
    CHECK(w->values == std::vector<uint64_t>{7, 1, 9});

    // factor 0 degenerates to plain find_witness
    SearchStats st2, st3;
    auto w0 = search::asymmetric_witness(c, col, 20, fns(), {{"x", "y", 0}}, Budget{}, st2);
    auto plain = search::find_witness(c, col, 20, fns(), Budget{}, st3);
    REQUIRE(w0.has_value());
    REQUIRE(plain.has_value());
    CHECK(w0->values == plain->values);
}

TEST_CASE("asymmetric witness respects the constraint against brute force") {
    Configuration c = parse_config(
        "config { vars x y z; blocks (x y z); formula x + 2*y = z; }");
    auto col = parse_coloring_spec("parity", 24);
    SearchStats st;
    auto got = search::asymmetric_witness(c, col, 24, fns(), {{"x", "y", 5}}, Budget{}, st);
    // oracle: lexicographically least triple with x+2y=z, monochromatic, x>5y
    std::optional<std::vector<uint64_t>> expect;
    for (uint64_t x = 1; x <= 24 && !expect; ++x)
        for (uint64_t y = 1; y <= 24 && !expect; ++y) {
            uint64_t z = x + 2 * y;
            if (z > 24 || x <= 5 * y) continue;
            if (col.color_of(x) == col.color_of(y) && col.color_of(y) == col.color_of(z))
                expect = std::vector<uint64_t>{x, y, z};
        }
    REQUIRE(got.has_value() == expect.has_value());
    if (got) CHECK(got->values == *expect);
}

TEST_CASE("mirrored asymmetric witnesses vanish under a scale-per-color obstruction") {
    // x+y=2z has monochromatic solutions everywhere, but demanding x>2y can
    // be obstructed: give each binary scale its own color, so x>2y forces
    // floor(log2 x) > floor(log2 y) and the pair is never monochromatic.
    Configuration c = parse_config(
        "config { vars x y z; blocks (x y z); formula x + y = 2*z; }");
    auto col = parse_coloring_spec("lmmod(2,6)", 50);
    SearchStats st1, st2;
    CHECK_FALSE(search::asymmetric_witness(c, col, 50, fns(), {{"x", "y", 2}}, Budget{}, st1)
                    .has_value());
    // without the ratio constraint the same coloring has witnesses
    CHECK(search::find_witness(c, col, 50, fns(), Budget{}, st2).has_value());
}

TEST_CASE("forcing number: classical Schur r=2 is 5, cross-checked exhaustively") {
    auto c = *catalog_lookup("schur-classical");
    SearchStats st;
    auto n = search::forcing_number(c, 2, 10, fns(), Budget{}, st);
    REQUIRE(n.has_value());
    CHECK(*n == 5);
    // oracle: full 2^N enumeration for N up to 8
    for (uint64_t N = 1; N <= 8; ++N) {
        bool forced = oracles::every_coloring_has_witness(c, 2, N);
        CHECK(forced == (N >= *n));
    }
}

TEST_CASE("forcing number: 3-AP with distinct values, r=2, is 9") {
    auto c = *catalog_lookup("3ap-distinct");
    SearchStats st;
    auto n = search::forcing_number(c, 2, 12, fns(), Budget{}, st);
    REQUIRE(n.has_value());
    CHECK(*n == 9); // van der Waerden W(3,2)
    CHECK(oracles::every_coloring_has_witness(c, 2, 9));
    CHECK_FALSE(oracles::every_coloring_has_witness(c, 2, 8));
}

TEST_CASE("avoiding coloring: lexicographically least Schur avoider at N=4") {
    auto c = *catalog_lookup("schur-classical");
    SearchStats st;
    auto col = search::avoiding_coloring(c, 2, 4, fns(), Budget{}, st);
    REQUIRE(col.has_value());
    CHECK(col->table() == std::vector<uint32_t>{0, 1, 1, 0});

    SearchStats st2;
    CHECK_FALSE(search::avoiding_coloring(c, 2, 5, fns(), Budget{}, st2).has_value());

    SearchStats st3;
    CHECK_FALSE(search::avoiding_coloring(c, 1, 5, fns(), Budget{}, st3).has_value());
}

TEST_CASE("avoiding coloring exists iff forcing number exceeds N (Schur scale)") {
    auto c = *catalog_lookup("schur-classical");
    SearchStats st;
    auto force = search::forcing_number(c, 2, 10, fns(), Budget{}, st);
    REQUIRE(force.has_value());
    for (uint64_t N = 1; N <= 8; ++N) {
        SearchStats s;
        bool avoider = search::avoiding_coloring(c, 2, N, fns(), Budget{}, s).has_value();
        CHECK(avoider == (N < *force));
    }
}

TEST_CASE("good pair graph: Schur under one color at N=12 is complete on {1..6}") {
    auto c = *catalog_lookup("schur");
    auto col = parse_coloring_spec("mono", 12);
    SearchStats st;
    auto g = search::good_pair_graph(c, col, 12, 0, HMode::Uniform, {}, fns(), Budget{}, st);
    CHECK(g.h_cap == 6);
    CHECK(g.vertices == std::vector<uint64_t>{1, 2, 3, 4, 5, 6});
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j) {
            bool expect = g.vertices[i] + g.vertices[j] <= 12;
            CHECK(static_cast<bool>(g.adj[i][j]) == expect);
        }
    // certificates are sound witnesses
    for (const auto& [edge, w] : g.certificates) {
        CHECK(holds(c, w));
        CHECK(w.values[2] == g.vertices[edge.first] + g.vertices[edge.second]);
    }
}

TEST_CASE("good pair graph: Schur under parity, home = even, N=20") {
    auto c = *catalog_lookup("schur");
    auto col = parse_coloring_spec("parity", 20);
    SearchStats st;
    auto g = search::good_pair_graph(c, col, 20, 0, HMode::Uniform, {}, fns(), Budget{}, st);
    // evens up to the cap; edges exactly where the sum stays in range (it is
    // automatically even)
    CHECK(g.h_cap == 10);
    CHECK(g.vertices == std::vector<uint64_t>{2, 4, 6, 8, 10});
    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j)
            CHECK(static_cast<bool>(g.adj[i][j]) ==
                  (g.vertices[i] + g.vertices[j] <= 20));
}

TEST_CASE("good pair graph: sum-product under parity certifies the (2,6) edge") {
    auto c = *catalog_lookup("pairwise-sum-product");
    auto col = parse_coloring_spec("parity", 100);
    SearchStats st;
    auto g = search::good_pair_graph(c, col, 100, 0, HMode::PerPair, {}, fns(), Budget{}, st);
    auto it2 = std::find(g.vertices.begin(), g.vertices.end(), 2);
    auto it6 = std::find(g.vertices.begin(), g.vertices.end(), 6);
    REQUIRE(it2 != g.vertices.end());
    REQUIRE(it6 != g.vertices.end());
    size_t i = it2 - g.vertices.begin(), j = it6 - g.vertices.begin();
    CHECK(g.adj[i][j]); // z=8 even, t=12 even
    const auto& w = g.certificates.at({std::min(i, j), std::max(i, j)});
    CHECK(w.values == std::vector<uint64_t>{2, 6, 8, 12});
}

TEST_CASE("max_ramsey_set matches brute force on small instances, both modes") {
    std::vector<std::string> names{"schur", "product", "pairwise-sum-product", "3ap",
                                   "difference"};
    std::vector<std::string> colorings{"mono", "parity", "resmod(3)", "random(3,2)",
                                       "lmmod(2,2)"};
    for (const auto& name : names) {
        auto c = *catalog_lookup(name);
        for (const auto& spec : colorings) {
            for (uint64_t N : {8, 16}) {
                auto col = parse_coloring_spec(spec, N);
                for (auto mode : {HMode::Uniform, HMode::PerPair}) {
                    CAPTURE(name);
                    CAPTURE(spec);
                    CAPTURE(N);
                    auto got = search::max_ramsey_set(c, col, N, mode, fns(), Budget{});
                    auto expect = oracles::brute_max_ramsey_set(c, col, N, mode);
                    CHECK(got.size == expect.size);
                    CHECK(got.best_H == expect.best_H);
                    CHECK(got.home_color == expect.home_color);
                    if (mode == HMode::Uniform) CHECK(got.aux_colors == expect.aux_colors);
                    CHECK(got.exhausted);
                }
            }
        }
    }
}

TEST_CASE("max_ramsey_set: frozen small answers") {
    // brute-force values, frozen: every pair of {1..6} sums within 12
    auto c = *catalog_lookup("schur");
    auto mono = parse_coloring_spec("mono", 12);
    auto rep = search::max_ramsey_set(c, mono, 12, HMode::Uniform, fns(), Budget{});
    CHECK(rep.size == 6);
    CHECK(rep.best_H == std::vector<uint64_t>{1, 2, 3, 4, 5, 6});

    // evens {2,4,6,8,10} all pairwise-sum within 20; odd class has no edges
    auto par = parse_coloring_spec("parity", 20);
    auto rep2 = search::max_ramsey_set(c, par, 20, HMode::Uniform, fns(), Budget{});
    CHECK(rep2.size == 5);
    CHECK(rep2.best_H == std::vector<uint64_t>{2, 4, 6, 8, 10});
    CHECK(rep2.home_color == 0);

    // degenerate: witnesses outgrow the bound, so no edges certify
    // (the first candidate pair (1,2) already needs z=3)
    auto psp = *catalog_lookup("pairwise-sum-product");
    auto tiny = parse_coloring_spec("mono", 2);
    auto rep3 = search::max_ramsey_set(psp, tiny, 2, HMode::PerPair, fns(), Budget{});
    CHECK(rep3.size <= 1);
}

TEST_CASE("mode monotonicity: uniform never beats per-pair") {
    for (const auto& name : {"schur", "pairwise-sum-product", "product", "3ap"}) {
        auto c = *catalog_lookup(name);
        for (const auto& spec : {"parity", "random(11,2)", "resmod(3)"}) {
            uint64_t N = 16;
            auto col = parse_coloring_spec(spec, N);
            auto uni = search::max_ramsey_set(c, col, N, HMode::Uniform, fns(), Budget{});
            auto pp = search::max_ramsey_set(c, col, N, HMode::PerPair, fns(), Budget{});
            CAPTURE(name);
            CAPTURE(spec);
            CHECK(uni.size <= pp.size);
        }
    }
}

TEST_CASE("reports are identical across worker counts") {
    auto c = *catalog_lookup("pairwise-sum-product");
    auto col = parse_coloring_spec("random(17,3)", 60);
    auto one = search::max_ramsey_set(c, col, 60, HMode::Uniform, fns(), Budget{}, 1);
    auto four = search::max_ramsey_set(c, col, 60, HMode::Uniform, fns(), Budget{}, 4);
    CHECK(ramsey_report_to_json(one).dump() == ramsey_report_to_json(four).dump());
}

TEST_CASE("budget exhaustion is reported, not fatal") {
    auto c = *catalog_lookup("pairwise-sum-product");
    auto col = parse_coloring_spec("mono", 2000);
    auto rep = search::max_ramsey_set(c, col, 2000, HMode::PerPair, fns(), Budget{2000});
    CHECK_FALSE(rep.exhausted);

    SearchStats st;
    CHECK_THROWS_AS(
        search::forcing_number(*catalog_lookup("schur-classical"), 3, 13, fns(), Budget{50}, st),
        search::BudgetExceeded);
}

TEST_CASE("separator search: identical expressions cannot be separated") {
    auto family = search::default_separator_family();
    search::SampleSpec spec;
    spec.a_hi = 10;
    spec.b_hi = 30;
    spec.regime = search::SampleSpec::Regime::AllPairs;
    auto rep = search::separator_search(parse_expr("x + y"), parse_expr("x + y"), family, spec);
    CHECK_FALSE(rep.winner.has_value());
    for (uint64_t f : rep.failure_counts) CHECK(f == rep.samples);
}

TEST_CASE("separator search: sums versus products, failure accounting is exact") {
    auto family = search::default_separator_family();
    search::SampleSpec spec; // b >= a^2, everything <= 100
    auto rep = search::separator_search(parse_expr("x + y"), parse_expr("x*y"), family, spec);
    REQUIRE(rep.failure_counts.size() == family.size());
    // recompute one descriptor's failure count independently
    auto pairs = spec.generate();
    CHECK(rep.samples == pairs.size());
    size_t manual = 0;
    const auto& d = family[0];
    for (auto [a, b] : pairs) {
        auto sf = d.eval(BigInt(a + b));
        auto sg = d.eval(BigInt(a * b));
        if (!sf.defined || !sg.defined || sf.index == sg.index) ++manual;
    }
    CHECK(rep.failure_counts[0] == manual);
    // a winner, if reported, must have zero failures
    if (rep.winner) CHECK(rep.failure_counts[*rep.winner] == 0);
}

TEST_CASE("separator search: x^y versus x*y in the exponential regime") {
    auto family = search::default_separator_family();
    search::SampleSpec spec;
    spec.a_lo = 2;
    spec.a_hi = 30;
    spec.b_hi = 30;
    spec.regime = search::SampleSpec::Regime::MultipleGap;
    spec.k = 2; // b >= 2a
    auto rep = search::separator_search(parse_expr("x^y"), parse_expr("x*y"), family, spec);
    CHECK(rep.samples > 0);
    // the iterated-log scale gap shows up: some descriptor separates most
    // samples; assert the best descriptor fails on less than a quarter
    uint64_t best = *std::min_element(rep.failure_counts.begin(), rep.failure_counts.end());
    CHECK(best * 4 < rep.samples);
}

// Random positive formulas over up to four variables, random blocks, random
// colorings: the engine and the plain enumeration oracle must agree exactly.
static Configuration random_config(std::mt19937_64& rng, bool want_ramsey) {
    static const char* atoms3[] = {"x + y = z",  "x*y = z",      "x + 2*y = z",
                                   "x^2 + y = z", "x + z = y",   "x < y",
                                   "x != y",      "x + y = 2*z", "2*x + y = z"};
    Configuration c;
    c.vars = {"x", "y", "z"};
    size_t n_atoms = 1 + rng() % 3;
    std::vector<Formula> parts;
    for (size_t i = 0; i < n_atoms; ++i)
        parts.push_back(parse_formula(atoms3[rng() % 9]));
    if (parts.size() == 1) c.formula = parts[0];
    else if (rng() % 2) c.formula = Formula::conj(parts);
    else c.formula = Formula::disj(parts);
    if (want_ramsey) {
        c.blocks = rng() % 2 ? std::vector<std::vector<std::string>>{{"x", "y", "z"}}
                             : std::vector<std::vector<std::string>>{{"x", "y"}, {"z"}};
        c.ramsey = {{"x", "y"}};
    } else {
        switch (rng() % 3) {
        case 0: c.blocks = {{"x", "y", "z"}}; break;
        case 1: c.blocks = {{"x", "y"}, {"z"}}; break;
        default: c.blocks = {{"x"}, {"y"}, {"z"}}; break;
        }
    }
    c.validate();
    return c;
}

TEST_CASE("property: witness engine agrees with the enumeration oracle on random configs") {
    std::mt19937_64 rng(987654);
    for (int round = 0; round < 120; ++round) {
        auto c = random_config(rng, false);
        uint64_t N = 4 + rng() % 9;
        auto col = Coloring::random(rng(), 1 + rng() % 3, N);
        SearchStats st;
        auto got = search::find_witness(c, col, N, fns(), Budget{}, st);
        oracles::BruteOptions opt;
        opt.coloring = &col;
        auto expect = oracles::brute_witness(c, N, opt);
        CAPTURE(c.to_text());
        CAPTURE(N);
        REQUIRE(got.has_value() == expect.has_value());
        if (got) CHECK(got->values == expect->values);
    }
}

TEST_CASE("property: clique engine agrees with the oracle on random ramsey configs") {
    std::mt19937_64 rng(13579);
    for (int round = 0; round < 40; ++round) {
        auto c = random_config(rng, true);
        uint64_t N = 6 + rng() % 11;
        auto col = Coloring::random(rng(), 2 + rng() % 2, N);
        for (auto mode : {HMode::Uniform, HMode::PerPair}) {
            auto got = search::max_ramsey_set(c, col, N, mode, fns(), Budget{});
            auto expect = oracles::brute_max_ramsey_set(c, col, N, mode);
            CAPTURE(c.to_text());
            CAPTURE(N);
            CHECK(got.size == expect.size);
            CHECK(got.best_H == expect.best_H);
            CHECK(got.home_color == expect.home_color);
        }
    }
}

TEST_CASE("searches reject colorings that do not cover the bound") {
    auto c = *catalog_lookup("schur");
    auto col = parse_coloring_spec("parity", 10);
    SearchStats st;
    CHECK_THROWS_AS(search::find_witness(c, col, 20, fns(), Budget{}, st), ConfigError);
    CHECK_THROWS_AS(search::max_ramsey_set(c, col, 20, HMode::Uniform, fns(), Budget{}),
                    ConfigError);
}

TEST_CASE("product config floors: the pair threshold is 6, size 3 stays out of reach") {
    auto c = *catalog_lookup("product");
    SearchStats st;
    auto pair_floor = search::uniform_floor_threshold(c, 2, 2, 20, fns(), Budget{}, st);
    REQUIRE(pair_floor.has_value());
    CHECK(*pair_floor == 6);

    // oracle: enumerate all 2-colorings at 6 and 5
    auto has_pair = [&](const Coloring& col, uint64_t N) {
        for (uint64_t a = 1; a <= N; ++a)
            for (uint64_t b = a + 1; b <= N; ++b) {
                if (col.color_of(a) != col.color_of(b)) continue;
                if (a * b <= N && col.color_of(a * b) == col.color_of(a)) return true;
            }
        return false;
    };
    for (uint64_t N : {5, 6}) {
        bool all = true;
        std::vector<uint32_t> table(N, 0);
        while (true) {
            if (!has_pair(Coloring::explicit_table(table, 2), N)) { all = false; break; }
            size_t i = 0;
            for (; i < N; ++i) {
                if (++table[i] < 2) break;
                table[i] = 0;
            }
            if (i == N) break;
        }
        CHECK(all == (N == 6));
    }

    // The size-3 multiplicative threshold resists exhaustive search: scale
    // colorings keep avoiding far past any feasible cap, so the honest
    // result here is budget exhaustion, reported as such.
    SearchStats st3;
    bool out_of_reach = false;
    try {
        auto m = search::uniform_floor_threshold(c, 2, 3, 80, fns(), Budget{400000}, st3);
        out_of_reach = !m.has_value();
    } catch (const search::BudgetExceeded&) {
        out_of_reach = true;
    }
    CHECK(out_of_reach);
}

TEST_CASE("uniform floor threshold agrees with exhaustive enumeration at edge scale") {
    // want=2: the least N where every 2-coloring admits a monochromatic good
    // pair; small enough to enumerate all colorings directly here
    auto c = *catalog_lookup("schur");
    SearchStats st;
    auto n0 = search::uniform_floor_threshold(c, 2, 2, 16, fns(), Budget{}, st);
    REQUIRE(n0.has_value());

    auto exists_pair = [&](const Coloring& col, uint64_t N) {
        for (uint64_t h1 = 1; h1 <= N; ++h1)
            for (uint64_t h2 = h1 + 1; h2 <= N; ++h2) {
                if (col.color_of(h1) != col.color_of(h2)) continue;
                uint64_t z = h1 + h2;
                if (z <= N && col.color_of(z) == col.color_of(h1)) return true;
            }
        return false;
    };
    for (uint64_t N = 2; N <= std::min<uint64_t>(*n0 + 1, 16); ++N) {
        bool all = true;
        std::vector<uint32_t> table(N, 0);
        while (all) {
            if (!exists_pair(Coloring::explicit_table(table, 2), N)) all = false;
            size_t i = 0;
            for (; i < N; ++i) {
                if (++table[i] < 2) break;
                table[i] = 0;
            }
            if (i == N) break;
        }
        CHECK(all == (N >= *n0));
    }
}

TEST_SUITE_END();
