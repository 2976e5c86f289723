#include <qcldgm/xi_design.hpp>

#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace qcldgm;

TEST_CASE("xi_poly reproduces the worked designs") {
    XiParams tiny{0, 2, {1}, 0, {0}, {1}};
    CHECK(xi_poly(tiny) == SparsePoly(8, {0, 1, 7}));
    CHECK(is_psi_unitary(xi_poly(tiny), PsiParams{2, 2, 0}));

    XiParams ex4{1, 7, {1, 3}, 0, {0, 0}, {0, 0}};
    CHECK(xi_poly(ex4) == parse_poly("56:(0;1;3;8;17)"));

    XiParams ex5{2, 11, {1, 3, 7}, 0, {0, 0, 0}, {0, 0, 0}};
    CHECK(xi_poly(ex5) == parse_poly("176:(0;1;3;7;12;25;51)"));
}

TEST_CASE("xi_poly validates bounds and rejects collisions") {
    CHECK_THROWS_AS(xi_poly(XiParams{0, 2, {2}, 0, {0}, {0}}), std::invalid_argument);  // k0 >= s
    CHECK_THROWS_AS(xi_poly(XiParams{0, 2, {1}, 4, {0}, {0}}), std::invalid_argument);  // c_minus1
    CHECK_THROWS_AS(xi_poly(XiParams{1, 4, {1, 1}, 0, {0, 0}, {0, 0}}), std::invalid_argument);  // k dup
    CHECK_THROWS_AS(xi_poly(XiParams{1, 4, {1, 2}, 0, {0, 4}, {0, 0}}), std::invalid_argument);  // c bound

    // k1 == s with c_minus1 = 1 collides the anchor with the k1 term
    const XiParams collide{1, 4, {1, 4}, 1, {0, 0}, {0, 0}};
    CHECK_FALSE(try_xi_poly(collide).has_value());
    CHECK_THROWS_AS(xi_poly(collide), std::invalid_argument);
}

TEST_CASE("every family member folds to the unit of R_s and has weight 2m+3") {
    Rng rng(0x12345ULL);
    for (int i = 0; i < 500; ++i) {
        const std::uint32_t m = static_cast<std::uint32_t>(rng.below(3));
        const std::uint32_t s = static_cast<std::uint32_t>(rng.range(2, 64));
        const XiParams p = random_xi_params(m, s, rng);
        const auto poly = try_xi_poly(p);
        if (!poly) continue;
        CHECK(poly->weight() == 2 * m + 3);
        CHECK(is_psi_unitary(*poly, PsiParams{s, m + 2, 0}));
    }
}

TEST_CASE("goodmat worked designs and guarantee flag") {
    CHECK(goodmat(1, 7, {1, 3}) == parse_poly("56:(0;1;3;8;17)"));
    CHECK(goodmat_guarantee(7, {1, 3}));
    CHECK_FALSE(has_length4_cycle(goodmat(1, 7, {1, 3})));

    // outside the sufficient conditions (s = 11 < 2*7) yet still cycle-free
    CHECK(goodmat(2, 11, {1, 3, 7}) == parse_poly("176:(0;1;3;7;12;25;51)"));
    CHECK_FALSE(goodmat_guarantee(11, {1, 3, 7}));
    CHECK_FALSE(has_length4_cycle(goodmat(2, 11, {1, 3, 7})));

    const auto small = goodmat(0, 3, {1});
    CHECK(small == SparsePoly(12, {0, 1, 4}));
    bool repeated = true;
    for (const auto& [dist, cnt] : distance_multiset(small).counts) repeated = repeated && (cnt == 1);
    CHECK(repeated);

    CHECK_THROWS_AS(goodmat(1, 7, {3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(goodmat(1, 7, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(goodmat(2, 7, {1, 3}), std::invalid_argument);  // wrong k count
}

TEST_CASE("goodmat under the guarantee is cycle-free over the whole small grid") {
    // every admissible chain k_{i+1} > 2 k_i with s > 2 k_m, for m <= 3, s <= 64
    for (std::uint32_t m = 0; m <= 3; ++m) {
        for (std::uint32_t s = 3; s <= 64; ++s) {
            std::vector<std::uint32_t> k(m + 1);
            const std::uint32_t cap = (s - 1) / 2;
            const auto recurse = [&](auto&& self, std::uint32_t level) -> void {
                const std::uint32_t lo = level == 0 ? 1 : 2 * k[level - 1] + 1;
                for (std::uint32_t v = lo; v <= cap; ++v) {
                    k[level] = v;
                    if (level == m) {
                        CHECK_FALSE(has_length4_cycle(goodmat(m, s, k)));
                    } else {
                        self(self, level + 1);
                    }
                }
            };
            recurse(recurse, 0);
        }
    }
}

TEST_CASE("sample_cycle_free: success, forced case, exhaustion") {
    Rng rng(77);
    const auto big = sample_cycle_free(1, 128, rng);
    REQUIRE(big.has_value());
    CHECK(big->ring_size() == 1024);
    CHECK(big->weight() == 5);
    CHECK_FALSE(has_length4_cycle(*big));

    const auto forced = sample_cycle_free(0, 3, rng);
    REQUIRE(forced.has_value());
    CHECK(*forced == SparsePoly(12, {0, 1, 4}));

    CHECK_FALSE(sample_cycle_free(1, 4, rng).has_value());
    CHECK_THROWS_AS(sample_cycle_free(0, 2, rng), std::invalid_argument);

    // strict mode keeps the doubling chain
    for (int i = 0; i < 50; ++i) {
        const auto p = sample_cycle_free(1, 64, rng, 1000, true);
        REQUIRE(p.has_value());
        const auto& sup = p->support();
        CHECK(sup[2] > 2 * sup[1]);  // support is (0; k0; k1; ...)
    }

    // deterministic for a fixed seed
    Rng r1(123), r2(123);
    CHECK(sample_cycle_free(1, 50, r1) == sample_cycle_free(1, 50, r2));
}

TEST_CASE("canonical_rep folds the four shift variants onto one representative") {
    const std::uint32_t s = 5, n = 4 * s, k0 = 2;
    CHECK(canonical_rep(SparsePoly(n, {s, s + k0, 2 * s + k0}), 0, s) == SparsePoly(n, {0, k0, s + k0}));
    CHECK(canonical_rep(SparsePoly(n, {0, k0, s + k0}), 0, s) == SparsePoly(n, {0, k0, s + k0}));

    // the sixteen (c_minus1, c0, d0) combinations split into four classes
    // of four; the representative is constant on each class
    const std::vector<std::vector<std::array<std::uint32_t, 3>>> classes = {
        {{0, 0, 0}, {1, 1, 0}, {2, 1, 1}, {3, 0, 1}},
        {{0, 0, 1}, {1, 0, 0}, {2, 1, 0}, {3, 1, 1}},
        {{0, 1, 0}, {1, 1, 1}, {2, 0, 1}, {3, 0, 0}},
        {{0, 1, 1}, {1, 0, 1}, {2, 0, 0}, {3, 1, 0}},
    };
    std::set<std::vector<std::uint32_t>> reps;
    for (const auto& cls : classes) {
        std::set<std::vector<std::uint32_t>> in_class;
        for (const auto& [cm, c0, d0] : cls) {
            const auto a = xi_poly(XiParams{0, s, {k0}, cm, {c0}, {d0}});
            const auto rep = canonical_rep(a, 0, s);
            CHECK(canonical_rep(rep, 0, s) == rep);  // idempotent
            in_class.insert(rep.support());
        }
        CHECK(in_class.size() == 1);
        reps.insert(*in_class.begin());
    }
    CHECK(reps.size() == 4);

    // m > 0 passes through untouched
    const auto a = xi_poly(XiParams{1, 7, {1, 3}, 2, {1, 0}, {3, 1}});
    CHECK(canonical_rep(a, 1, 7) == a);
}

TEST_CASE("recognize_xi inverts xi_poly") {
    const auto ex4 = parse_poly("56:(0;1;3;8;17)");
    auto p = recognize_xi(ex4);
    REQUIRE(p.has_value());
    CHECK(xi_poly(*p) == ex4);
    CHECK(p->m == 1);
    CHECK(p->s == 7);

    const auto ex5 = parse_poly("176:(0;1;3;7;12;25;51)");
    p = recognize_xi(ex5);
    REQUIRE(p.has_value());
    CHECK(xi_poly(*p) == ex5);

    Rng rng(0xabc);
    for (int i = 0; i < 300; ++i) {
        const std::uint32_t m = static_cast<std::uint32_t>(rng.below(3));
        const std::uint32_t s = static_cast<std::uint32_t>(rng.range(2, 64));
        const auto params = random_xi_params(m, s, rng);
        const auto poly = try_xi_poly(params);
        if (!poly) continue;
        const auto rec = recognize_xi(*poly);
        REQUIRE(rec.has_value());
        CHECK(xi_poly(*rec) == *poly);
    }

    CHECK_FALSE(recognize_xi(SparsePoly::one(56)).has_value());
    CHECK_FALSE(recognize_xi(parse_poly("56:(0;1;3;8)")).has_value());   // even weight
    CHECK_FALSE(recognize_xi(parse_poly("56:(1;2;3;9;18)")).has_value());  // no anchor shape
}

TEST_CASE("parameter records round-trip through the flat config format") {
    Rng rng(0x5151);
    for (int i = 0; i < 100; ++i) {
        const std::uint32_t m = static_cast<std::uint32_t>(rng.below(3));
        const std::uint32_t s = static_cast<std::uint32_t>(rng.range(2, 64));
        const auto p = random_xi_params(m, s, rng);
        const auto q = xi_params_from_config(xi_params_to_config(p));
        CHECK(q.m == p.m);
        CHECK(q.s == p.s);
        CHECK(q.k == p.k);
        CHECK(q.c_minus1 == p.c_minus1);
        CHECK(q.c == p.c);
        CHECK(q.d == p.d);
    }

    // omitted offsets default to zero; bad records are rejected
    const auto q = xi_params_from_config("m=1\ns=7\nk=1,3\n");
    CHECK(xi_poly(q) == parse_poly("56:(0;1;3;8;17)"));
    CHECK_THROWS_AS(xi_params_from_config("m=1\ns=7\n"), std::invalid_argument);
    CHECK_THROWS_AS(xi_params_from_config("m=1\ns=7\nk=1,3\nwhat=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(xi_params_from_config("m=1 s=7"), std::invalid_argument);
}

TEST_CASE("shifting a polynomial shifts its inverse the other way") {
    Rng rng(0x777ULL);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t s = static_cast<std::uint32_t>(rng.range(3, 40));
        const XiParams p = random_xi_params(0, s, rng);
        const auto poly = try_xi_poly(p);
        if (!poly) continue;
        const std::uint32_t n = poly->ring_size();
        const auto inv = euclid_inverse(*poly);
        REQUIRE(inv.has_value());
        const auto shifted_inv = euclid_inverse(shift(*poly, s));
        REQUIRE(shifted_inv.has_value());
        CHECK(*shifted_inv == shift(*inv, static_cast<std::int64_t>(n) - s));
    }
}
