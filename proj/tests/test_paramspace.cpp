#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfr/paramspace.hpp"

#include <cmath>
#include <random>

using namespace lfr;

static FieldElem Q(const char* s) { return parse_scalar(s); }
static FieldElem R(long n) { return FieldElem(Rational(n)); }
static NormalFormParams NF(const char* a, const char* b) { return {Q(a), Q(b)}; }

TEST_CASE("classification of parameter pairs") {
    CHECK(classify_params(ParamPair{vec3(1, 2, 3), vec3(2, 4, 6)}).kind == TriangleClass::Inadmissible);
    CHECK_FALSE(classify_params(ParamPair{vec3(1, 2, 3), vec3(2, 4, 6)}).reason.empty());
    CHECK(classify_params(ParamPair{vec3(1, 1, 0), vec3(1, 0, 1)}).kind == TriangleClass::DegenerateBetaGamma);
    CHECK(classify_params(ParamPair{vec3(1, 1, 2), vec3(3, 1, 2)}).kind == TriangleClass::DegenerateZeroGamma);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            CHECK(classify_params(ParamPair::normal_form(R(a), R(b))).kind == TriangleClass::NonDegenerate);
}

TEST_CASE("group actions") {
    ParamPair p{vec3(1, 2, 3), vec3(4, 5, -1)};
    ParamPair s = apply_action(p, Scale{R(2)});
    for (long k = 1; k <= 5; ++k) {
        ProjPoint x(vec3(1, k, 2 * k - 7));
        CHECK(eval_f(s, x) == eval_f(p, x));
    }
    CHECK_THROWS_AS(apply_action(p, Scale{R(0)}), ZeroScale);
    CHECK_THROWS_AS(apply_action(p, Dilate{R(0)}), ZeroScale);
    // Translate(mu) conjugates by the shift (x, y) -> (x + mu, y + mu)
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-40, 40);
    ParamPair base = ParamPair::normal_form(R(2), R(3));
    FieldElem mu = Q("3/2");
    ParamPair t = apply_action(base, Translate{mu});
    int tested = 0;
    while (tested < 10) {
        FieldElem x = R(d(rng)), y = R(d(rng));
        try {
            ProjPoint lhs = eval_f(t, affine_point(x, y));
            ProjPoint rhs = eval_f(base, affine_point(x + mu, y + mu));
            auto r = rhs.affine();
            if (!r) continue;
            CHECK(lhs == affine_point((*r)[0] - mu, (*r)[1] - mu));
            ++tested;
        } catch (const Indeterminate&) {
        }
    }
}

TEST_CASE("normal form") {
    ParamPair p = ParamPair::normal_form(Q("0"), Q("5/7"));
    auto n = normalize_beta2_zero(p);
    CHECK(n.a == Q("0"));
    CHECK(n.b == Q("5/7"));
    auto m = normalize_beta2_zero(ParamPair{vec3(0, 0, 2), vec3(5, 2, 0)});
    CHECK(m.a == Q("0"));
    CHECK(m.b == Q("5/2"));
    CHECK(vn_membership(m, 10) == vn_membership(ParamPair{vec3(0, 0, 2), vec3(5, 2, 0)}, 10));
    CHECK_THROWS_AS(normalize_beta2_zero(ParamPair{vec3(1, 2, 3), vec3(4, 5, -1)}), NotInStratum);
    auto inv = inverse_normal_form(NF("2", "3"));
    CHECK(inv.a == Q("-1"));
    CHECK(inv.b == Q("-3"));
    // with T(x,y) = (x-b, y-b) and the swap s: f^-1 o s o T = s o T o g
    ParamPair f = NF("2", "3").params(), g = inv.params();
    FieldElem b = Q("3");
    for (long k = 1; k <= 5; ++k) {
        FieldElem u = R(k + 10), v = R(2 * k + 3);
        auto fx = eval_f_inverse(f, affine_point(v - b, u - b)).affine();
        auto gx = eval_f(g, affine_point(u, v)).affine();
        REQUIRE(fx);
        REQUIRE(gx);
        CHECK((*fx)[0] == (*gx)[1] - b);
        CHECK((*fx)[1] == (*gx)[0] - b);
    }
}

TEST_CASE("V_n membership") {
    CHECK(vn_membership(NF("0", "0"), 10) == 0);
    CHECK(vn_membership(NF("1", "0"), 10) == 1);
    CHECK(vn_membership(NF("1/2+1/2*i", "i"), 10) == 2);
    CHECK(vn_membership(NF("2", "0"), 10) == 6);
    CHECK(vn_membership(NF("-7/3", "0"), 10) == 6);
    CHECK_FALSE(vn_membership(NF("2", "3"), 10).has_value());
    CHECK_FALSE(vn_membership(NF("2", "0"), 5).has_value());
}

TEST_CASE("actions preserve membership") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> d(1, 9);
    for (auto& e : vn_catalog())
        for (auto& r : e.reps) {
            if (!r.exact) continue;
            ParamPair p = r.nf.params();
            Kind k = p.kind();
            for (int t = 0; t < 10; ++t) {
                FieldElem v = promote(FieldElem(Rational(d(rng), d(rng))), k);
                Action act = t % 3 == 0 ? Action(Scale{v}) : t % 3 == 1 ? Action(Dilate{v}) : Action(Translate{v});
                p = apply_action(p, act);
                CHECK(vn_membership(p, e.n + 2) == e.n);
            }
        }
}

TEST_CASE("|O_2| = n + 1") {
    for (auto nf : {NF("0", "0"), NF("1", "0"), NF("2", "0"), NF("1/2+1/2*i", "i")}) {
        auto n = vn_membership(nf, 10);
        REQUIRE(n);
        auto t = track_exceptional_orbits(nf.params());
        CHECK(t.orbits[2].singular());
        CHECK(int(t.orbits[2].points.size()) == *n + 1);
    }
}

TEST_CASE("V_0 algebraic characterization") {
    // q = pGamma iff a1 b0 - a0 b1 = -a2 b0 = a1 a2
    std::vector<ParamPair> yes{ParamPair::normal_form(R(0), R(0)),
                               apply_action(apply_action(ParamPair::normal_form(R(0), R(0)), Translate{R(2)}), Dilate{R(3)})};
    std::vector<ParamPair> no{ParamPair::normal_form(R(1), R(0)), ParamPair::normal_form(R(2), R(3)),
                              ParamPair{vec3(1, 2, 3), vec3(4, 5, -1)}};
    auto cond = [](const ParamPair& p) {
        auto& a = p.alpha;
        auto& b = p.beta;
        FieldElem l = a[1] * b[0] - a[0] * b[1], m = -(a[2] * b[0]), r = a[1] * a[2];
        return l == m && m == r;
    };
    for (auto& p : yes) {
        auto g = derive_geometry(p);
        CHECK(g.q == g.pGamma);
        CHECK(cond(p));
    }
    for (auto& p : no) {
        auto g = derive_geometry(p);
        CHECK_FALSE(g.q == g.pGamma);
        CHECK_FALSE(cond(p));
    }
}

TEST_CASE("catalog") {
    auto& cat = vn_catalog();
    REQUIRE(cat.size() == 7);
    for (auto& e : cat) {
        for (auto& r : e.reps) {
            CHECK(vn_membership(r.nf, e.n + 2) == e.n);
            if (!r.exact && e.definingPolys) {
                CHECK(std::abs(eval_complex(e.definingPolys->first, r.nf.a.to_complex())) < 1e-3);
                CHECK(std::abs(eval_complex(e.definingPolys->second, r.nf.b.to_complex())) < 1e-3);
                // printed digits are within rounding of the polished values
                CHECK(std::abs(r.nf.a.to_complex() - std::complex<double>(r.printedA[0], r.printedA[1])) < 1e-4);
            }
        }
    }
    // V_4 representative (0.6974+0.2538i, 0.5077i)
    bool found = false;
    for (auto& r : cat[4].reps)
        if (std::abs(r.nf.a.to_complex() - std::complex<double>(0.6974, 0.2538)) < 1e-3 &&
            std::abs(r.nf.b.to_complex() - std::complex<double>(0, 0.5077)) < 1e-3)
            found = true;
    CHECK(found);
    CHECK(cat[4].definingPolys->first == IntPoly({1, -3, 9, -24, 36, -27, 9}));
    CHECK(cat[5].definingPolys->second == IntPoly({1, 0, 7, 0, 14, 0, 8, 0, 1}));
}

TEST_CASE("V_6 invariants") {
    auto inv = v6_invariant(NF("2", "0"));
    CHECK(inv.exactlyVerified);
    CHECK(inv.multiplier == Q("1"));
    ParamPair p = NF("2", "0").params();
    CHECK(maps_line_into(p, inv.lineCycle[0], inv.lineCycle[1]));
    CHECK(maps_line_into(p, inv.lineCycle[1], inv.lineCycle[2]));
    CHECK(maps_line_into(p, inv.lineCycle[2], inv.lineCycle[0]));
    CHECK_FALSE(maps_line_into(p, inv.lineCycle[0], inv.lineCycle[2]));
    CHECK(proportional(inv.lineCycle[1], vec3(1, 0, 1)));  // y + 1 = 0
    CHECK_THROWS_AS(v6_invariant(NF("2", "3")), NotInV6);
    for (auto& r : vn_catalog()[6].reps) {
        if (r.exact) continue;
        auto iv = v6_invariant(r.nf);
        auto w = iv.multiplier.to_complex();
        CHECK(std::abs(std::pow(w, 5) - 1.0) < 1e-6);
        CHECK(std::abs(w - 1.0) > 0.1);
        CHECK(iv.maxDeviation < 1e-6);
    }
}

TEST_CASE("critically finite family") {
    auto F = family_64(Q("1/10"), Q("3/10"));
    CHECK(F.certificate.certified);
    CHECK(F.certificate.qFixed);
    CHECK(eval_f(F.params, F.certificate.q) == F.certificate.q);
    CHECK(F.certificate.q == affine_point(R(0), R(0)));
    auto g = classify_growth(F.params);
    CHECK(g.kind == GrowthClass::Exponential);
    CHECK(std::abs(g.root.value - 1.6180339887) < 1e-9);
    auto F0 = family_64(Q("1/10"), Q("0"));
    CHECK(F0.certificate.exceptionalLines == std::vector<int>{2});
    CHECK_THROWS_AS(family_64(Q("0"), Q("3/10")), ZeroB);
}
