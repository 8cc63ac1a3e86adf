#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfr/jetflow.hpp"

#include <random>

using namespace lfr;

static FieldElem Q(const char* s) { return parse_scalar(s); }
static FieldElem R(long n) { return FieldElem(Rational(n)); }
static ParamPair nf(long a, long b) { return ParamPair::normal_form(R(a), R(b)); }

static BlowupRegistry with_e1(const ParamPair& p) {
    BlowupRegistry reg;
    reg.add(base_point(derive_geometry(p).e1), 0);
    return reg;
}

TEST_CASE("series helpers and jets") {
    Curve c{UPoly::constant(R(1)), UPoly({R(2), R(1)}), UPoly({R(3), R(0), R(5)})};
    Jet j = canonical_jet(c, 2);
    CHECK(jet_matches(j, c));
    CHECK(jet_matches(j, jet_curve(j)));
    Jet j0 = canonical_jet(c, 0);
    CHECK(SurfacePoint{j0, -1}.base() == ProjPoint(vec3(1, 2, 3)));
}

TEST_CASE("Sigma_0 germ lands on the E_1 fiber") {
    ParamPair p{vec3(1, 2, 3), vec3(4, 5, -1)};
    BlowupRegistry reg = with_e1(p);
    Germ g{vec3(0, 2, 3), vec3(1, 0, 0)};
    TransportResult r = germ_transport(p, reg, g);
    REQUIRE(r.point.is_fiber());
    CHECK(r.point.center == 0);
    // [beta.x : alpha.x] = [7 : 13]
    auto d = r.point.dir();
    CHECK(d[0] == R(1));
    CHECK(d[1] == FieldElem(Rational(13, 7)));
    // and the fiber goes to [xi0 b1 : xi2 b1 : xi0 a1] = [35 : 65 : 14]
    SurfacePoint next = transport_point(p, reg, r.point);
    CHECK_FALSE(next.is_fiber());
    CHECK(next.base() == ProjPoint(vec3(35, 65, 14)));
}

TEST_CASE("transport agrees with the map off the critical set") {
    ParamPair p = nf(2, 3);
    BlowupRegistry reg = with_e1(p);
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int t = 0; t < 20; ++t) {
        Vec3 x{R(1), R(d(rng)), R(d(rng))};
        if (jacobian_f(p, ProjPoint(x)).is_zero()) continue;
        SurfacePoint P = transport_point(p, reg, base_point(ProjPoint(x)));
        CHECK(P.base() == eval_f(p, ProjPoint(x)));
        Vec3 v{R(0), R(d(rng)), R(d(rng))};
        TransportResult r = germ_transport(p, reg, Germ{x, v});
        CHECK(ProjPoint(r.image.base) == ProjPoint(f_hom(p, x)));
    }
}

TEST_CASE("inverse transport of p_gamma for the (.1,.3) map") {
    ParamPair p{vec3(0, 0, 1), {Q("1/10"), Q("1"), Q("3/10")}};
    auto g = derive_geometry(p);
    BlowupRegistry reg = with_e1(p);
    SurfacePoint P = base_point(g.pGamma);
    P = transport_point(p, reg, P, true);
    CHECK(P.is_fiber());
    CHECK(P.base() == g.e1);
    P = transport_point(p, reg, P, true);
    CHECK(g.sigma0.contains(P.base()));
    P = transport_point(p, reg, P, true);
    CHECK_FALSE(P.is_fiber());
    CHECK(P.base() == g.p0);
}

TEST_CASE("critically finite family: chain from Sigma_beta") {
    ParamPair p{vec3(0, 0, 1), {Q("1/10"), Q("1"), Q("3/10")}};
    auto g = derive_geometry(p);
    BlowupRegistry reg = with_e1(p);
    Vec3 x = cross(g.sigmaBeta.coeffs(), vec3(1, 7, 2));
    SurfacePoint P = transport_point(p, reg, base_point(ProjPoint(x)));
    CHECK(P.base() == g.e2);
    P = transport_point(p, reg, P);
    REQUIRE(P.is_fiber());
    CHECK(P.base() == g.e1);
    CHECK(P.dir()[1] == Q("10/3"));  // [c : 1]
    P = transport_point(p, reg, P);
    CHECK(P.base() == ProjPoint({Q("3/10"), Q("1"), Q("0")}));
    P = transport_point(p, reg, P);
    CHECK(P.base() == g.q);
}

TEST_CASE("orbit of q for (a,b) = (2,0)") {
    ParamPair p = nf(2, 0);
    TrackResult t = track_exceptional_orbits(p);
    CHECK(t.structure.str() == "c:1,1,7");
    const OrbitRecord& o2 = t.orbits[2];
    REQUIRE(o2.points.size() == 7);
    CHECK(o2.singular());
    CHECK(o2.terminal.index == 0);
    CHECK(o2.points[0].base() == affine_point(R(-2), R(0)));
    CHECK(o2.points[2].base() == ProjPoint(vec3(0, 0, 1)));
    CHECK(o2.points[3].base() == ProjPoint(vec3(0, 1, -1)));
    REQUIRE(o2.points[4].is_fiber());
    CHECK(o2.points[4].base() == ProjPoint(vec3(0, 1, 0)));
    CHECK(o2.points[4].dir()[1] == R(-1));
    CHECK(o2.points[6].base() == derive_geometry(p).pGamma);
}

TEST_CASE("short orbits of Sigma_0 and Sigma_beta") {
    for (auto p : {nf(2, 3), nf(2, 0), nf(-3, 5), ParamPair{vec3(1, 2, 3), vec3(4, 5, -1)}}) {
        TrackResult t = track_exceptional_orbits(p);
        CHECK(t.orbits[0].points.size() == 1);
        CHECK(t.orbits[0].singular());
        CHECK(t.orbits[0].terminal.index == 1);
        if (p.beta[2].is_zero()) {
            CHECK(t.orbits[1].points.size() == 1);
            CHECK(t.orbits[1].terminal.index == 2);
        }
    }
}

TEST_CASE("no orbit ends at eps_2 when beta2 != 0") {
    for (auto p : {ParamPair{vec3(1, 2, 3), vec3(4, 5, -1)}, ParamPair{vec3(0, 0, 1), {Q("1/10"), Q("1"), Q("3/10")}},
                   ParamPair{vec3(2, -1, 1), vec3(1, 3, 2)}}) {
        TrackResult t = track_exceptional_orbits(p);
        for (auto& o : t.orbits)
            if (o.singular()) CHECK(o.terminal.index != 2);
    }
}

TEST_CASE("Sigma_0 lifts to a curve exactly when beta1 alpha2 != alpha1 beta2") {
    auto images = [](const ParamPair& p) {
        BlowupRegistry reg = with_e1(p);
        std::vector<SurfacePoint> out;
        for (long k = 1; k <= 5; ++k)
            out.push_back(germ_transport(p, reg, Germ{vec3(0, k, 2 * k + 1), vec3(1, 0, 0)}).point);
        return out;
    };
    auto good = images(ParamPair{vec3(1, 2, 3), vec3(4, 5, -1)});
    for (size_t i = 0; i < good.size(); ++i) {
        CHECK(good[i].is_fiber());
        for (size_t j = 0; j < i; ++j) CHECK_FALSE(same_point(good[i], good[j]));
    }
    // Sigma_gamma = Sigma_0: the whole line lands on one point of E_1
    auto bad = images(ParamPair{vec3(1, 1, 2), vec3(3, 1, 2)});
    for (auto& P : bad) {
        CHECK(P.is_fiber());
        CHECK(same_point(P, bad[0]));
    }
}

TEST_CASE("growth verdicts") {
    auto d = classify_growth(ParamPair{vec3(1, 1, 0), vec3(1, 0, 1)});
    CHECK(d.kind == GrowthClass::Exponential);
    CHECK(std::abs(d.root.value - 1.6180339887) < 1e-9);
    auto l = classify_growth(nf(1, 0));
    CHECK(l.kind == GrowthClass::Periodic);
    CHECK(l.period == 5);
    auto q = classify_growth(nf(2, 0));
    CHECK(q.kind == GrowthClass::Polynomial);
    CHECK(q.degree == 2);
    auto e = classify_growth(nf(2, 3));
    CHECK(e.kind == GrowthClass::Exponential);
    CHECK(e.poly == IntPoly({-1, -1, 0, 1}));
    CHECK_THROWS_AS(classify_growth(ParamPair{vec3(1, 2, 3), vec3(2, 4, 6)}), InadmissibleParams);
    auto z = classify_growth(nf(0, 0));
    CHECK(z.kind == GrowthClass::Periodic);
    CHECK(z.period == 6);
}

TEST_CASE("approximate tracking follows the exact one") {
    auto ex = track_exceptional_orbits(nf(2, 0));
    auto ap = track_exceptional_orbits(ParamPair::normal_form(FieldElem::approx(2.0), FieldElem::approx(0.0)));
    CHECK(ap.structure.str() == ex.structure.str());
    CHECK(classify_growth(ParamPair::normal_form(FieldElem::approx(2.0), FieldElem::approx(0.0))).numerical);
}

TEST_CASE("registry rules") {
    BlowupRegistry reg;
    reg.add(base_point(ProjPoint(vec3(0, 1, 0))), 0);
    CHECK_THROWS(reg.add(base_point(ProjPoint(vec3(0, 2, 0))), 0));
    CHECK(reg.find(base_point(ProjPoint(vec3(0, 3, 0)))) == 0);
    CHECK(reg.find(base_point(ProjPoint(vec3(1, 3, 0)))) == -1);
}
