#include "doctest.h"

#include "ada/diffpoly.hpp"

using namespace ada;

namespace {
const Field Q = Field::ratfunc();
const CtxPtr ctx = Q.ctx();

DiffPoly Y(int k = 0, int pow = 1) { return DiffPoly::indeterminate(ctx, k, pow); }
CElem c(long n, long d = 1) { return CElem(Q.from_rat(rat(n, d))); }
CElem X() { return CElem(Q.x()); }
} // namespace

TEST_CASE("stats: order/deg/mul/wt/complexity") {
    // P = Y'Y + Y + 1
    DiffPoly P = Y(1) * Y(0) + Y(0) + DiffPoly::constant(c(1));
    CHECK(P.order() == 1);
    CHECK(P.deg() == 2);
    CHECK(P.mult() == 0);
    CHECK(P.weight() == 1);
    DiffPoly P2 = Y(0, 2) + Y(0);
    CHECK(P2.homogeneous_part(2).equals_exact(Y(0, 2)));
    CHECK(P2.homogeneous_part(1).equals_exact(Y(0)));
    CHECK(P2.homogeneous_part(3).is_zero());
    // complexity triple
    DiffPoly P3 = Y(2) * Y(0, 2) + Y(1, 3);
    CHECK(P3.complexity() == std::tuple<int, int, int>{2, 1, 3});
}

TEST_CASE("partial and separant") {
    // partial(Y (Y')^2, (0,1)) = 2 Y Y'
    DiffPoly P = Y(0) * Y(1, 2);
    DiffPoly D = P.partial(MultiIndex(std::vector<int>{0, 1}));
    CHECK(D.equals_exact(c(2) * (Y(0) * Y(1))));
    CHECK(P.separant().equals_exact(c(2) * (Y(0) * Y(1))));
    // S_{Y(Y')^2 + Y^3} = 2YY'
    DiffPoly P2 = Y(0) * Y(1, 2) + Y(0, 3);
    CHECK(P2.separant().equals_exact(c(2) * (Y(0) * Y(1))));
    // P_(i) has smaller complexity
    CHECK(P2.partial(MultiIndex(std::vector<int>{1})).complexity() < P2.complexity());
}

TEST_CASE("evaluation and conjugation") {
    DiffPoly P = Y(2); // Y''
    CHECK((P.evaluate(X().pow_int(3)) - c(6) * X()).is_zero());
    // (Y^2)_{+x} = Y^2 + 2x Y + x^2
    DiffPoly Q2 = Y(0, 2).conj_add(X());
    DiffPoly want = Y(0, 2) + X() * (c(2) * Y(0)) + DiffPoly::constant(X() * X());
    CHECK(Q2.equals_exact(want));
    // (Y')_{x*} = x Y' + Y
    DiffPoly Q3 = Y(1).conj_mult(X());
    CHECK(Q3.equals_exact(X() * Y(1) + Y(0)));
    // P_{+a}(0) = P(a)
    DiffPoly P4 = Y(1) * Y(0) + Y(0, 2) + DiffPoly::constant(c(3));
    CElem a = X() + c(1, 2);
    CHECK((P4.conj_add(a).constant_coeff() - P4.evaluate(a)).is_zero());
    // identity P_{+a,xn} = P_{xn,+a/n}
    CElem n = X().pow_int(2);
    CHECK(P4.conj_add(a).conj_mult(n).equals_exact(P4.conj_mult(n).conj_add(a / n)));
}

TEST_CASE("compositional conjugation") {
    // (Y'')^x = x^2 Y'' + x Y' evaluated at y = x^3 equals 6x
    DiffPoly P = Y(2);
    CElem phi = X();
    DiffPoly Pphi = P.conj_comp(phi);
    Deriv dd = Deriv{}.conjugated(phi);
    CHECK((Pphi.evaluate(X().pow_int(3), dd) - c(6) * X()).is_zero());
    // P^phi(y) = P(y) for a messier P
    DiffPoly P2 = Y(2) * Y(0) + Y(1, 2) + X() * Y(0);
    CElem y = X().pow_int(2) + c(1);
    CHECK((P2.conj_comp(phi).evaluate(y, dd) - P2.evaluate(y)).is_zero());
    // (P^phi)_d = (P_d)^phi
    CHECK(P2.conj_comp(phi).homogeneous_part(2).equals_exact(P2.homogeneous_part(2).conj_comp(phi)));
    // weight invariance
    CHECK(P2.conj_comp(phi).weight() == P2.weight());
    CHECK(P2.conj_add(X() + c(3)).weight() == P2.weight());
    CHECK(P2.conj_mult(X().pow_int(2)).weight() == P2.weight());
}

TEST_CASE("separant identities") {
    DiffPoly P = Y(1) * Y(0, 2) + Y(1, 3) + X() * Y(0);
    CElem a = X() + c(2);
    CElem phi = X().pow_int(2);
    CHECK(P.conj_add(a).separant().equals_exact(P.separant().conj_add(a)));
    CHECK(P.conj_mult(a).separant().equals_exact(a * P.separant().conj_mult(a)));
    int r = P.order();
    CHECK(P.conj_comp(phi).separant().equals_exact(phi.pow_int(r) * P.separant().conj_comp(phi)));
}

TEST_CASE("riccati transform") {
    auto R = riccati_basis(ctx, 3);
    CHECK(R[2].equals_exact(Y(0, 2) + Y(1))); // Z^2 + Z'
    CHECK(R[0].equals_exact(DiffPoly::constant(c(1))));
    // Ri(Y) = 1, Ri(YY'') has the defining property
    CHECK(riccati_poly(Y(0)).equals_exact(DiffPoly::constant(c(1))));
    DiffPoly P = Y(0) * Y(2);
    DiffPoly Ri = riccati_poly(P);
    // Ri(P)(y^dagger) = P(y)/y^deg for y = x^2
    CElem y = X().pow_int(2);
    CElem z = y.logderiv();
    CHECK((Ri.evaluate(z) - P.evaluate(y) / y.pow_int(2)).is_zero());
    CHECK_THROWS_AS(riccati_poly(Y(0, 2) + Y(0)), Precondition);
}

TEST_CASE("dominant data") {
    Field T2 = Field::multitrans(2);
    auto tm = [&](long lx, long le, long num = 1, long den = 1) {
        return CElem(T2.monomial(Mono(std::vector<Rat>{Rat(lx), Rat(le)}), rat(num, den)));
    };
    DiffPoly Y0 = DiffPoly::indeterminate(T2.ctx(), 0);
    DiffPoly Y2 = DiffPoly::indeterminate(T2.ctx(), 2);
    DiffPoly Y5 = DiffPoly::indeterminate(T2.ctx(), 0, 5);
    // ddeg(Y + x^-1 Y^2) = 1
    DiffPoly P = Y0 + tm(-1, 0) * (Y0 * Y0);
    auto dd = dominant_data(P);
    CHECK(dd.ddeg == 1);
    CHECK(dd.dval == 1);
    // paper example: P = e^-x Y'' - Y + x^-1 + e^-4x Y^5 has ddeg 1
    DiffPoly Pn = tm(0, -1) * Y2 - Y0 + DiffPoly::constant(tm(-1, 0)) + tm(0, -4) * Y5;
    auto dn = dominant_data(Pn);
    CHECK(dn.ddeg == 1);
    CHECK(dn.dval == 1); // the constant coefficient x^-1 sits strictly below v(P)
    CHECK(dn.v == ValVec::zero(2));
    // monomial: dval = ddeg = deg
    DiffPoly M = tm(3, 2) * (Y0 * Y2);
    auto dm = dominant_data(M);
    CHECK(dm.ddeg == 2);
    CHECK(dm.dval == 2);
    CHECK(dm.dwt == 2);
}

TEST_CASE("newton sweep reports") {
    Field T2 = Field::multitrans(2);
    DiffPoly Y0 = DiffPoly::indeterminate(T2.ctx(), 0);
    DiffPoly P = DiffPoly::indeterminate(T2.ctx(), 1) + Y0;
    std::vector<CElem> chain{CElem(T2.one()), CElem(T2.monomial(Mono::gen(2, 0, Rat(-1))))};
    auto sw = newton_sweep(P, chain);
    CHECK(sw.entries.size() == 2);
}

TEST_CASE("printing") {
    DiffPoly P = Y(0, 2) + Y(1);
    CHECK(P.str("Z") == "Z^2 + Z'");
    DiffPoly Q2 = Y(2) - DiffPoly::constant(c(1));
    CHECK(Q2.str() == "Y'' - 1");
}
