#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qmod/repcore.hpp"

using namespace qmod;

namespace {

Module mk(AlgebraPtr alg, std::vector<int> dims, std::vector<std::vector<int>> mats) {
    const Quiver& q = alg->quiver();
    std::vector<FFMatrix> action;
    for (size_t a = 0; a < q.arrows.size(); ++a)
        action.push_back(FFMatrix::from_rows(dims[q.arrows[a].tgt], dims[q.arrows[a].src],
                                             alg->modulus(), mats[a]));
    return make_module(alg, std::move(dims), std::move(action));
}

struct K2Modules {
    AlgebraPtr alg = fixtures::kronecker(2, 2);
    Module p1 = projective_module(alg, 0);
    Module p2 = projective_module(alg, 1);
    Module i1 = injective_module(alg, 0);
    Module i2 = injective_module(alg, 1);
    Module s1 = simple_module(alg, 0);
    Module s2 = simple_module(alg, 1);
    Module j0 = mk(alg, {1, 1}, {{1}, {0}});
    Module j1 = mk(alg, {1, 1}, {{1}, {1}});
    Module jinf = mk(alg, {1, 1}, {{0}, {1}});
    // Regular module with a degree-two point: second arrow acts by the
    // companion matrix of x^2 + x + 1.
    Module quad = mk(alg, {2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 1}});
};

}  // namespace

TEST_CASE("standard modules have the expected shapes") {
    K2Modules m;
    CHECK(m.p1.dims == std::vector<int>{1, 2});
    CHECK(m.p2.dims == std::vector<int>{0, 1});
    CHECK(m.i1.dims == std::vector<int>{1, 0});
    CHECK(m.i2.dims == std::vector<int>{2, 1});
    CHECK(m.s1.dims == std::vector<int>{1, 0});
    CHECK(m.s2.dims == std::vector<int>{0, 1});
    for (const Module* x : {&m.p1, &m.p2, &m.i1, &m.i2, &m.s1, &m.s2, &m.quad})
        CHECK(check_module(*x).ok);
    CHECK(zero_module(m.alg).is_zero());
    CHECK(m.p1.length() == 3);
    CHECK(m.p1.dims_string() == "(1,2)");
    CHECK(is_semisimple(direct_sum(m.alg, {m.s1, m.s2})));
    CHECK_FALSE(is_semisimple(m.p1));
}

TEST_CASE("direct sums concatenate blocks") {
    K2Modules m;
    Module s = direct_sum(m.alg, {m.j0, m.p2});
    CHECK(s.dims == std::vector<int>{1, 2});
    CHECK(s.action[0].at(0, 0) == 1);
    CHECK(s.action[1].at(0, 0) == 0);
    CHECK(s.length() == m.j0.length() + m.p2.length());
}

TEST_CASE("relation violations are reported with the relation spelled out") {
    AlgebraPtr zr = fixtures::zero_rel(2);
    std::vector<FFMatrix> mats = {FFMatrix::from_rows(1, 1, 2, {1}),
                                  FFMatrix::from_rows(1, 1, 2, {1}),
                                  FFMatrix::from_rows(1, 1, 2, {0})};
    Module bad{zr, {1, 1, 1}, mats};
    CheckResult r = check_module(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.violation.find("relation 1") != std::string::npos);
    CHECK_THROWS_AS(make_module(zr, {1, 1, 1}, mats), ValidationError);

    Module good = mk(zr, {1, 1, 1}, {{0}, {1}, {0}});
    CHECK(check_module(good).ok);
}

TEST_CASE("projective modules represent vertex evaluation") {
    K2Modules m;
    for (const Module* x : {&m.p1, &m.p2, &m.i2, &m.j0, &m.j1, &m.s1, &m.quad})
        for (int v = 0; v < 2; ++v) CHECK(hom_dim(projective_module(m.alg, v), *x) == x->dims[v]);

    AlgebraPtr sq = fixtures::square(3);
    for (int v = 0; v < 4; ++v) {
        Module pv = projective_module(sq, v);
        CHECK(check_module(pv).ok);
        for (int w = 0; w < 4; ++w) CHECK(hom_dim(projective_module(sq, w), pv) == pv.dims[w]);
    }
}

TEST_CASE("hom bases consist of morphisms") {
    K2Modules m;
    const Module* mods[] = {&m.p1, &m.i2, &m.j0, &m.quad, &m.s2};
    for (const Module* x : mods)
        for (const Module* y : mods)
            for (const Morphism& f : hom_basis(*x, *y)) CHECK(is_morphism(*x, *y, f));
    CHECK(hom_dim(m.s1, m.p1) == 0);
    CHECK(hom_dim(m.p1, m.s1) == 1);
    CHECK(hom_dim(m.j0, m.jinf) == 0);
    CHECK(hom_dim(m.jinf, m.j0) == 0);
    CHECK(hom_dim(m.quad, m.quad) == 2);
}

TEST_CASE("morphism helpers") {
    K2Modules m;
    Morphism id = identity_morphism(m.p1);
    CHECK(is_morphism(m.p1, m.p1, id));
    CHECK(is_injective_morphism(id));
    CHECK(is_surjective_morphism(m.p1, id));
    CHECK_FALSE(is_zero_morphism(id));
    Morphism z = zero_morphism(m.p1, m.i2);
    CHECK(is_morphism(m.p1, m.i2, z));
    CHECK(is_zero_morphism(z));
    CHECK(compose(m.p1, m.p1, m.p1, id, id).maps == id.maps);

    std::vector<Morphism> basis = hom_basis(m.p2, m.p1);
    REQUIRE(basis.size() == 2);
    Morphism f = combine(m.p2, m.p1, basis, {1, 1});
    CHECK(is_morphism(m.p2, m.p1, f));
}

TEST_CASE("kernels, images and quotients are exact") {
    K2Modules m;
    std::vector<Morphism> basis = hom_basis(m.p2, m.p1);
    for (const Morphism& f : basis) {
        if (is_zero_morphism(f)) continue;
        CHECK(is_injective_morphism(f));
        Submodule img = image_of(m.p2, m.p1, f);
        CHECK(img.length() == 1);
        CHECK(kernel_of(m.p2, m.p1, f).length() == 0);
        Module q = quotient_module(m.p1, img);
        CHECK(q.length() == 2);
        CHECK(q.dims == std::vector<int>{1, 1});
    }
}

TEST_CASE("generated submodules close under the arrows") {
    K2Modules m;
    Submodule whole = submodule_from_generators(m.p1, {{0, {1}}});
    CHECK(whole.dims() == std::vector<int>{1, 2});
    Submodule line = submodule_from_generators(m.p1, {{1, {1, 0}}});
    CHECK(line.dims() == std::vector<int>{0, 1});
    CHECK(is_stable(m.p1, line));
    CHECK(submodule_contains(whole, line));
    CHECK_THROWS_AS(submodule_from_generators(m.p1, {{0, {1, 0}}}), ValidationError);
}

TEST_CASE("radical, socle and top") {
    K2Modules m;
    CHECK(radical_submodule(m.p1).dims() == std::vector<int>{0, 2});
    CHECK(socle_submodule(m.p1).dims() == std::vector<int>{0, 2});
    CHECK(top_dims(m.p1) == std::vector<int>{1, 0});
    CHECK(radical_submodule(m.i2).dims() == std::vector<int>{0, 1});
    CHECK(socle_submodule(m.i2).dims() == std::vector<int>{0, 1});
    CHECK(top_dims(m.i2) == std::vector<int>{2, 0});
    CHECK(radical_submodule(m.s1).length() == 0);
    CHECK(socle_submodule(m.s1).length() == 1);

    Module q = quotient_module(m.p1, radical_submodule(m.p1));
    CHECK(q.dims == std::vector<int>{1, 0});
    CHECK(is_semisimple(q));
    CHECK(iso_test(q, m.s1));

    Module r = submodule_module(m.p1, radical_submodule(m.p1));
    std::vector<Module> parts = decompose(r);
    REQUIRE(parts.size() == 2);
    for (const Module& s : parts) CHECK(iso_test(s, m.s2));
}

TEST_CASE("submodule and quotient fit together") {
    K2Modules m;
    for (const Submodule& u : enumerate_submodules(m.i2)) {
        Morphism incl, proj;
        Module sub = submodule_module(m.i2, u, &incl);
        Module quo = quotient_module(m.i2, u, &proj);
        CHECK(sub.length() + quo.length() == m.i2.length());
        CHECK(is_morphism(sub, m.i2, incl));
        CHECK(is_injective_morphism(incl));
        CHECK(is_morphism(m.i2, quo, proj));
        CHECK(is_surjective_morphism(quo, proj));
        CHECK(is_zero_morphism(compose(sub, m.i2, quo, incl, proj)));
    }
    CHECK_THROWS_AS(submodule_module(K2Modules().j0, Submodule{{Subspace::full(1, 2),
                                                                Subspace::zero(1, 2)}}),
                    ValidationError);
}

TEST_CASE("submodule lattices match the exhaustive oracle") {
    K2Modules m;
    CHECK(enumerate_submodules(m.p2).size() == 2);
    CHECK(enumerate_submodules(m.j0).size() == 3);
    CHECK(enumerate_submodules(m.p1).size() == 6);

    for (const Module* x : {&m.p1, &m.i2, &m.j1, &m.quad}) {
        std::vector<Submodule> got = enumerate_submodules(*x);
        std::vector<Submodule> want = oracles::all_submodules(*x);
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
        CHECK(got.front().length() == 0);
        CHECK(got.back().length() == x->length());
    }

    AlgebraPtr k3 = fixtures::kronecker(2, 3);
    Module y = mk(k3, {2, 1}, {{1, 2}, {0, 1}});
    std::vector<Submodule> got = enumerate_submodules(y);
    std::vector<Submodule> want = oracles::all_submodules(y);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
}

TEST_CASE("submodule enumeration respects its budgets") {
    K2Modules m;
    Module big = mk(m.alg, {7, 6}, {std::vector<int>(42, 0), std::vector<int>(42, 0)});
    CHECK_THROWS_AS(enumerate_submodules(big), CapExceeded);

    Caps tight;
    tight.submodule_count_budget = 3;
    CHECK_THROWS_AS(enumerate_submodules(m.p1, tight), CapExceeded);
}

TEST_CASE("maximal submodules cover the radical") {
    K2Modules m;
    std::vector<Submodule> mx = maximal_submodules(m.p1);
    REQUIRE(mx.size() == 1);
    CHECK(mx[0] == radical_submodule(m.p1));

    Module ss = direct_sum(m.alg, {m.s1, m.s1});
    CHECK(maximal_submodules(ss).size() == 3);

    for (const Submodule& u : maximal_submodules(m.i2)) {
        Module q = quotient_module(m.i2, u);
        CHECK(q.length() == 1);
        CHECK(is_semisimple(q));
    }
}

TEST_CASE("cogeneration matches the embedding search") {
    K2Modules m;
    CHECK(is_cogenerated(m.s2, m.p1));
    CHECK_FALSE(is_cogenerated(m.s1, m.p1));
    CHECK_FALSE(is_cogenerated(m.p1, m.s2));
    CHECK(is_cogenerated(m.p1, m.i2));
    CHECK(is_cogenerated(zero_module(m.alg), m.s1));

    const Module* mods[] = {&m.s1, &m.s2, &m.j0, &m.j1, &m.jinf, &m.p1, &m.p2, &m.i1, &m.i2};
    for (const Module* x : mods)
        for (const Module* y : mods) CHECK(is_cogenerated(*x, *y) == oracles::embeds(*x, *y));
}

TEST_CASE("composition factor multiplicities") {
    K2Modules m;
    CHECK(jh_multiplicity(m.p1, 0) == 1);
    CHECK(jh_multiplicity(m.p1, 1) == 2);
    CHECK_THROWS_AS(jh_multiplicity(m.p1, 5), ValidationError);
}

TEST_CASE("indecomposability via Fitting plus exhaustive fallback") {
    K2Modules m;
    for (const Module* x : {&m.p1, &m.p2, &m.i1, &m.i2, &m.s1, &m.s2, &m.j0, &m.j1, &m.jinf,
                            &m.quad})
        CHECK(is_indecomposable(*x));
    CHECK_FALSE(is_indecomposable(direct_sum(m.alg, {m.s1, m.s2})));
    CHECK_FALSE(is_indecomposable(direct_sum(m.alg, {m.p1, m.p2})));
    CHECK_FALSE(is_indecomposable(direct_sum(m.alg, {m.j0, m.j0})));
    CHECK_THROWS_AS(is_indecomposable(zero_module(m.alg)), ValidationError);
}

TEST_CASE("decompose returns the Krull-Schmidt pieces") {
    K2Modules m;
    CHECK(decompose(zero_module(m.alg)).empty());
    CHECK(decompose(m.quad).size() == 1);

    std::vector<Module> parts = decompose(direct_sum(m.alg, {m.j0, m.p2, m.j0}));
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].dims == std::vector<int>{0, 1});
    CHECK(iso_test(parts[1], m.j0));
    CHECK(iso_test(parts[2], m.j0));

    parts = decompose(direct_sum(m.alg, {m.quad, m.jinf}));
    REQUIRE(parts.size() == 2);
    CHECK(iso_test(parts[0], m.jinf));
    CHECK(iso_test(parts[1], m.quad));

    parts = decompose(direct_sum(m.alg, {m.p1, m.p1}));
    REQUIRE(parts.size() == 2);
    for (const Module& s : parts) CHECK(iso_test(s, m.p1));
}

TEST_CASE("isomorphism testing") {
    K2Modules m;
    CHECK(iso_test(m.j0, m.j0));
    CHECK_FALSE(iso_test(m.j0, m.j1));
    CHECK_FALSE(iso_test(m.j0, m.jinf));
    CHECK_FALSE(iso_test(m.j1, m.jinf));
    CHECK_FALSE(iso_test(m.s1, m.s2));
    CHECK_FALSE(iso_test(m.p1, m.i2));

    // Conjugating by a base change gives an isomorphic module.
    FFMatrix g = FFMatrix::from_rows(2, 2, 2, {1, 1, 0, 1});
    Module conj{m.alg, {2, 2},
                {g.mul(m.quad.action[0]).mul(g.inverse()), g.mul(m.quad.action[1]).mul(g.inverse())}};
    require_valid(conj);
    CHECK(iso_test(m.quad, conj));
    CHECK(iso_fingerprint(m.quad) == iso_fingerprint(conj));

    CHECK(iso_test(direct_sum(m.alg, {m.j0, m.jinf}), direct_sum(m.alg, {m.jinf, m.j0})));
    CHECK_FALSE(iso_test(direct_sum(m.alg, {m.p1, m.s1}), direct_sum(m.alg, {m.p1, m.s2})));
    CHECK_FALSE(iso_test(m.quad, direct_sum(m.alg, {m.j0, m.j1})));
}

TEST_CASE("registry deduplicates up to isomorphism") {
    K2Modules m;
    IsoRegistry reg;
    CHECK(reg.insert(m.s1) == 0);
    CHECK(reg.insert(m.s2) == 1);
    CHECK(reg.insert(m.j0) == 2);
    CHECK(reg.insert(m.j1) == 3);
    CHECK(reg.insert(m.jinf) == 4);
    CHECK(reg.insert(m.j0) == 2);
    CHECK(reg.size() == 5);
    CHECK(reg.find(m.j1) == 3);
    CHECK_FALSE(reg.find(m.quad).has_value());
    CHECK(reg.rep(2).dims == std::vector<int>{1, 1});
}

TEST_CASE("transport along a quiver self-correspondence") {
    K2Modules m;
    Module swapped = transport_module(m.j0, m.alg, {0, 1}, {1, 0});
    CHECK(swapped.action[0].is_zero());
    CHECK(swapped.action[1].at(0, 0) == 1);
    CHECK(iso_test(swapped, m.jinf));
}

TEST_CASE("duality swaps projectives and injectives") {
    K2Modules m;
    AlgebraPtr op = m.alg->opposite();
    Module d = dual_module(m.p1, op);
    CHECK(d.dims == std::vector<int>{1, 2});
    CHECK(iso_test(d, injective_module(op, 0)));
    Module dd = dual_module(d, op->opposite());
    CHECK(dd.dims == m.p1.dims);
    for (int a = 0; a < 2; ++a) CHECK(dd.action[a] == m.p1.action[a]);
    CHECK_THROWS_AS(dual_module(m.p1, m.alg), ValidationError);
}

TEST_CASE("push down along a disconnected double cover") {
    AlgebraPtr base = fixtures::kronecker(2, 2);
    Quiver cq;
    cq.vertices = {"1", "2", "1x", "2x"};
    cq.arrows = {{"a", 0, 1}, {"b", 0, 1}, {"ax", 2, 3}, {"bx", 2, 3}};
    AlgebraPtr cover = Algebra::make(cq, {}, 2);
    CoveringSpec spec{cover, base, {0, 1, 0, 1}, {0, 1, 0, 1}};
    validate_covering(spec);

    Module xhat = mk(cover, {1, 2, 0, 1},
                     {{1, 0}, {0, 1}, {}, {}});
    Module down = push_down(spec, xhat);
    CHECK(down.dims == std::vector<int>{1, 3});
    Module expect = direct_sum(base, {projective_module(base, 0), projective_module(base, 1)});
    CHECK(iso_test(down, expect));

    CoveringSpec bad = spec;
    bad.arrow_fiber = {0, 1, 1, 1};
    CHECK_NOTHROW(validate_covering(bad));  // endpoints still compatible
    bad.vertex_fiber = {0, 1, 1, 0};
    CHECK_THROWS_AS(validate_covering(bad), ValidationError);
}
