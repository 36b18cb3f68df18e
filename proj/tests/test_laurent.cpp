#include "support.hpp"

#include "mzl/laurent.hpp"

using namespace mzl;

TEST_CASE("constructors and predicates") {
    LaurentPoly z;
    CHECK(z.is_zero());
    CHECK(LaurentPoly(0).is_zero());
    CHECK(LaurentPoly(1).is_one());
    CHECK(LaurentPoly::L(1).is_monomial());
    CHECK(LaurentPoly::L(0, 5).is_monomial());
    CHECK_FALSE((LaurentPoly::L(1) + 1).is_monomial());
    CHECK(LaurentPoly(-3).coeff(0) == -3);
    CHECK(LaurentPoly::L(-2, 7).coeff(-2) == 7);
    CHECK(LaurentPoly::L(-2, 7).coeff(0) == 0);
}

TEST_CASE("ring arithmetic") {
    auto L = LaurentPoly::L(1);
    auto Linv = LaurentPoly::L(-1);
    CHECK(L * Linv == LaurentPoly(1));
    CHECK((L + 1) * (L - 1) == LaurentPoly::L(2) - 1);
    CHECK(L - L == LaurentPoly());
    CHECK(-(L - 1) == LaurentPoly(1) - L);
    CHECK(L.pow(0) == LaurentPoly(1));
    CHECK(L.pow(3) == LaurentPoly::L(3));
    CHECK((L + 1).pow(2) == LaurentPoly::L(2) + LaurentPoly::L(1, 2) + 1);

    // (L - 1)(L^2 + L + 1) = L^3 - 1
    auto cyc = LaurentPoly::L(2) + L + 1;
    CHECK((L - 1) * cyc == LaurentPoly::L(3) - 1);
}

TEST_CASE("evaluation is exact rational") {
    auto p = LaurentPoly::L(2) - LaurentPoly::L(-1);  // q^2 - 1/q
    CHECK(p.eval(3) == Rat(26, 3));
    CHECK(LaurentPoly::L(-3).eval(2) == Rat(1, 8));
    CHECK(LaurentPoly().eval(5) == Rat(0));
    // point count of a torus times a line: (q-1)q
    auto tl = (LaurentPoly::L(1) - 1) * LaurentPoly::L(1);
    CHECK(tl.eval(7) == Rat(42));
}

TEST_CASE("rendering") {
    CHECK(LaurentPoly().str() == "0");
    CHECK(LaurentPoly(1).str() == "1");
    CHECK(LaurentPoly(-1).str() == "-1");
    CHECK(LaurentPoly::L(1).str() == "L");
    CHECK(LaurentPoly::L(-1).str() == "L^-1");
    auto p = LaurentPoly::L(2, 3) - LaurentPoly::L(-1) + 7;
    CHECK(p.str() == "3*L^2 + 7 - L^-1");
}

TEST_CASE("comparison gives a total order usable as map key") {
    CHECK(LaurentPoly() < LaurentPoly(1));
    CHECK_FALSE(LaurentPoly::L(1) < LaurentPoly::L(1));
    CHECK((LaurentPoly::L(1) < LaurentPoly::L(2)) != (LaurentPoly::L(2) < LaurentPoly::L(1)));
}
