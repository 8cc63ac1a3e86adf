#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfr/oracle.hpp"

#include <cmath>

using namespace lfr;

static FieldElem Q(const char* s) { return parse_scalar(s); }
static ParamPair nf(long a, long b) { return ParamPair::normal_form(FieldElem(Rational(a)), FieldElem(Rational(b))); }

// sequences cross-checked against an independent sympy composition for the first 7-8 terms
static const DegreeSequence kSeq20{2,  2,  3,  4,  5,  7,  9,   11,  14,  16,  20,  23,  27,  31,  35,  40,  45,  50,
                                   56, 61, 68, 74, 81, 88, 95, 103, 111, 119, 128, 136, 146, 155, 165, 175, 185, 196};
static const DegreeSequence kSeq23{2, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28, 37, 49, 65, 86, 114, 151};

TEST_CASE("homogeneous polynomials") {
    HPoly x = HPoly::variable(0, Q("1")), y = HPoly::variable(1, Q("1"));
    HPoly s = (x + y) * (x + y);
    CHECK(s.deg() == 2);
    CHECK(s.at(1, 0) == Q("2"));
    CHECK(s.at(0, 0) == Q("1"));
    CHECK((s - s).is_zero());
}

TEST_CASE("compose_reduce") {
    ParamPair p = nf(2, 3);
    auto f = HomogeneousMap::of_f(p), g = HomogeneousMap::of_f_inverse(p);
    auto id = compose_reduce(f, g);
    CHECK(id.degree() == 1);
    CHECK(id.is_identity());
    CHECK(compose_reduce(g, f).is_identity());
    auto J = HomogeneousMap::of_J(Q("1"));
    CHECK(compose_reduce(J, J).is_identity());
    auto ff = compose_reduce(f, f);
    CHECK(ff.degree() < 4);
    CHECK(ff.degree() == 2);
    CHECK(same_map(compose_reduce(ff, f), compose_reduce(f, ff)));
    ParamPair gen{vec3(1, 2, 3), vec3(4, 5, -1)};
    auto h = HomogeneousMap::of_f(gen);
    CHECK(compose_reduce(h, h).degree() < 4);
    CHECK(compose_reduce(HomogeneousMap::of_f_inverse(gen), h).is_identity());
}

TEST_CASE("degree sequences") {
    CHECK(degree_sequence(nf(2, 0), 36) == kSeq20);
    CHECK(degree_sequence(nf(2, 3), 17) == kSeq23);
    CHECK(degree_sequence(nf(1, 0), 10) == DegreeSequence{2, 2, 2, 2, 1, 2, 2, 2, 2, 1});
    CHECK(degree_sequence(nf(0, 0), 6) == DegreeSequence{2, 1, 2, 1, 2, 1});
    // symbolic composition agrees where it is affordable
    CHECK(degree_sequence_symbolic(nf(2, 0), 8) == DegreeSequence(kSeq20.begin(), kSeq20.begin() + 8));
    CHECK(degree_sequence_symbolic(nf(2, 3), 6) == DegreeSequence(kSeq23.begin(), kSeq23.begin() + 6));
    CHECK_THROWS_AS(degree_sequence(nf(2, 3), 30), DegreeBudgetExceeded);
    CHECK_THROWS(degree_sequence(ParamPair::normal_form(FieldElem::approx(2.0), FieldElem::approx(3.0)), 5));
    for (auto p : {nf(5, -7), ParamPair{vec3(1, 2, 3), vec3(4, 5, -1)}}) {
        auto d = degree_sequence(p, 8);
        CHECK(d[0] == 2);
        for (size_t k = 1; k < d.size(); ++k) CHECK(d[k] <= 2 * d[k - 1]);
    }
}

TEST_CASE("figure map degrees grow like the golden mean") {
    ParamPair p{vec3(0, 0, 1), {Q("1/10"), Q("1"), Q("3/10")}};
    auto d = degree_sequence(p, 10);
    CHECK(d == DegreeSequence{2, 3, 5, 8, 13, 21, 34, 55, 89, 144});
}

TEST_CASE("identity order") {
    CHECK(identity_order(nf(0, 0), 10) == 6);
    CHECK(identity_order(nf(1, 0), 10) == 5);
    CHECK_FALSE(identity_order(nf(1, 0), 4).has_value());
    CHECK_FALSE(identity_order(nf(2, 3), 12).has_value());
    CHECK(identity_order(ParamPair::normal_form(Q("1/2+1/2*i"), Q("i")), 10) == 8);
    CHECK_FALSE(identity_order(ParamPair::normal_form(Q("1/2+1/2*i"), Q("i")), 7).has_value());
}

TEST_CASE("growth fit") {
    auto q = growth_fit(degree_sequence(nf(2, 0), 10));
    CHECK(std::holds_alternative<QuadraticFit>(q));
    CHECK(std::holds_alternative<QuadraticFit>(growth_fit(kSeq20)));
    CHECK(std::holds_alternative<Bounded>(growth_fit(degree_sequence(nf(1, 0), 15))));
    auto e = growth_fit(kSeq23);
    REQUIRE(std::holds_alternative<ExponentialEstimate>(e));
    CHECK(std::abs(std::get<ExponentialEstimate>(e).rate - 1.3247179572) < 0.05 * 1.3247179572);
    CHECK_THROWS_AS(growth_fit(DegreeSequence{2, 2, 3}), TooShort);
}
