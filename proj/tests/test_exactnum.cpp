#include "doctest.h"

#include <random>

#include "dfh/algebraic.hpp"
#include "dfh/cyclotomic.hpp"
#include "dfh/mahler.hpp"
#include "dfh/rational.hpp"
#include "dfh/rootcount.hpp"

using namespace dfh;

namespace {

std::mt19937 rng(20240901);

Rat random_rat(long span = 50) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, span);
    return make_rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational arithmetic and canonical form") {
    CHECK(rational_arith(Rat(1, 2), Rat(1, 3), RatOp::Add) == Rat(5, 6));
    CHECK(parse_rational("2/4") == Rat(1, 2));
    CHECK(to_string(make_rat(-3, 6)) == "-1/2");
    CHECK(to_string(Rat(7)) == "7");
    CHECK_THROWS_AS(rational_arith(Rat(3, 5), Rat(0), RatOp::Div), std::domain_error);
    CHECK_THROWS(parse_rational("not-a-number"));
}

TEST_CASE("rational arithmetic laws on random triples") {
    for (int i = 0; i < 200; ++i) {
        Rat a = random_rat(), b = random_rat(), c = random_rat();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("cyclotomic basics") {
    Cyclo z3 = Cyclo::root_of_unity(3, 1);
    CHECK(z3 * z3 * z3 == Cyclo(1));
    Cyclo z4 = Cyclo::root_of_unity(4, 1);
    CHECK(z4 + Cyclo::root_of_unity(4, 3) == Cyclo(0));
    CHECK((z4 * z4) == Cyclo(-1));
}

TEST_CASE("mixed-order product lands in the lcm field") {
    Cyclo z6 = Cyclo::root_of_unity(6, 1);
    Cyclo z4 = Cyclo::root_of_unity(4, 1);
    Cyclo prod = z6 * z4;
    // zeta_6 * zeta_4 = zeta_12^(2+3) = zeta_12^5
    CHECK(prod == Cyclo::root_of_unity(12, 5));
    auto ord = prod.root_of_unity_order();
    REQUIRE(ord.has_value());
    CHECK(*ord == 12);
}

TEST_CASE("canonicalization is idempotent and minimal") {
    Cyclo z6 = Cyclo::root_of_unity(6, 1);
    Cyclo c1 = z6.canonicalize();
    CHECK(c1.order() == 3);  // Q(zeta_6) == Q(zeta_3)
    CHECK(c1.canonicalize() == c1);
    CHECK(c1.canonicalize().order() == c1.order());

    Cyclo minus_one = Cyclo::root_of_unity(12, 6);
    CHECK(minus_one.canonicalize().order() == 1);
    CHECK(minus_one == Cyclo(-1));

    Cyclo sum = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 4);  // 2cos(2pi/5)
    CHECK(sum.canonicalize().order() == 5);  // real but not in a smaller cyclotomic field
}

TEST_CASE("root of unity orders for all N <= 30") {
    for (unsigned long n = 1; n <= 30; ++n) {
        for (unsigned long k = 1; k <= n; ++k) {
            Cyclo z = Cyclo::root_of_unity(n, k);
            auto ord = z.root_of_unity_order();
            REQUIRE(ord.has_value());
            CHECK(*ord == n / std::gcd(n, k));
        }
    }
}

TEST_CASE("non-roots of unity are rejected") {
    CHECK(rational_root_of_unity_order(Rat(2)) == std::nullopt);
    CHECK(rational_root_of_unity_order(Rat(-1)) == 2);
    Cyclo two(Rat(2));
    CHECK(two.root_of_unity_order() == std::nullopt);
    Cyclo mixed = Cyclo::root_of_unity(3, 1) + Cyclo(2);
    CHECK(mixed.root_of_unity_order() == std::nullopt);
    // 1 + zeta_3 = -zeta_3^2 = zeta_6, a genuine root of unity
    Cyclo z6 = Cyclo::root_of_unity(3, 1) + Cyclo(1);
    CHECK(z6.root_of_unity_order() == 6);
    CHECK_THROWS_AS(Cyclo(0).root_of_unity_order(), std::domain_error);
}

TEST_CASE("cyclotomic inverse") {
    for (unsigned long n : {3ul, 4ul, 5ul, 8ul, 12ul}) {
        Cyclo z = Cyclo::root_of_unity(n, 1) + Cyclo(Rat(1, 2));
        CHECK(z * z.inverse() == Cyclo(1));
    }
}

TEST_CASE("minpoly root-of-unity detection") {
    CHECK(root_of_unity_order(cyclotomic_polynomial(6)) == 6);
    CHECK(root_of_unity_order(cyclotomic_polynomial(1)) == 1);
    CHECK(root_of_unity_order(QPoly(std::vector<Rat>{Rat(-2), Rat(1)})) == std::nullopt);
    // x^2 - x - 1: degree 2, fails against Phi_3, Phi_4, Phi_6
    CHECK(root_of_unity_order(QPoly(std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)})) == std::nullopt);
}

TEST_CASE("numeric cross-check of zeta_6 * zeta_4 against doubles") {
    Cyclo prod = Cyclo::root_of_unity(6, 1) * Cyclo::root_of_unity(4, 1);
    // evaluate sum coords[i] * zeta_12^i numerically
    double re = 0, im = 0;
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < prod.coords().size(); ++i) {
        double c = prod.coords()[i].get_d();
        re += c * std::cos(2 * pi * i / 12.0);
        im += c * std::sin(2 * pi * i / 12.0);
    }
    CHECK(std::abs(re - std::cos(2 * pi * 5 / 12.0)) < 1e-12);
    CHECK(std::abs(im - std::sin(2 * pi * 5 / 12.0)) < 1e-12);
}

TEST_CASE("sturm isolation") {
    // (x-1)(x-2)(x+3)
    QPoly p = QPoly(std::vector<Rat>{Rat(-1), Rat(1)}) * QPoly(std::vector<Rat>{Rat(-2), Rat(1)}) *
              QPoly(std::vector<Rat>{Rat(3), Rat(1)});
    auto roots = isolate_real_roots(p, Rat(-10), Rat(10));
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].first < -3);
    CHECK(roots[0].second > -3);
    CHECK(roots[2].first < 2);
    CHECK(roots[2].second > 2);
}

TEST_CASE("winding-number root count in boxes") {
    // x^2 + 1: roots at +-i
    QPoly p(std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
    CHECK(count_roots_in_box(p, Box{Rat(-1, 2), Rat(1, 2), Rat(1, 2), Rat(2)}) == 1);
    CHECK(count_roots_in_box(p, Box{Rat(-1, 2), Rat(1, 2), Rat(-2), Rat(-1, 2)}) == 1);
    CHECK(count_roots_in_box(p, Box{Rat(-2), Rat(2), Rat(-2), Rat(2)}) == 2);
    CHECK(count_roots_in_box(p, Box{Rat(1), Rat(2), Rat(1), Rat(2)}) == 0);
    // real root polynomial
    QPoly q(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});  // x^2 - 2
    CHECK(count_roots_in_box(q, Box{Rat(1), Rat(2), Rat(-1), Rat(1)}) == 1);
    CHECK(count_roots_in_box(q, Box{Rat(-2), Rat(2), Rat(-1), Rat(1)}) == 2);
    // Phi_5 roots are on the unit circle
    CHECK(count_roots_in_box(cyclotomic_polynomial(5), Box{Rat(-2), Rat(2), Rat(-2), Rat(2)}) == 4);
    CHECK(count_roots_in_box(cyclotomic_polynomial(5), Box{Rat(-2), Rat(2), Rat(1, 100), Rat(2)}) == 2);
}

TEST_CASE("boundary roots are rejected") {
    QPoly q(std::vector<Rat>{Rat(-1), Rat(1)});  // x - 1
    CHECK_THROWS_AS(count_roots_in_box(q, Box{Rat(0), Rat(1), Rat(-1), Rat(1)}), std::domain_error);
}

TEST_CASE("algebraic validate") {
    AlgebraicByMinPoly golden{QPoly(std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)}),
                              Box{Rat(1), Rat(2), Rat(-1), Rat(1)}};
    CHECK_NOTHROW(golden.validate());
    AlgebraicByMinPoly bad{QPoly(std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)}),
                           Box{Rat(-10), Rat(10), Rat(-1), Rat(1)}};
    CHECK_THROWS(bad.validate());  // box holds both roots
}

TEST_CASE("mahler height: exact anchors") {
    // x - 2 -> log 2
    auto e = algebraic_height(QPoly(std::vector<Rat>{Rat(-2), Rat(1)}), 1e-9);
    CHECK(e.lo <= std::log(2.0) + 1e-15);
    CHECK(e.hi >= std::log(2.0) - 1e-15);
    CHECK(e.width() <= 1e-9);

    // golden ratio: M(x^2-x-1) = (1+sqrt5)/2, so h = log(phi)/2
    double logphi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    auto mm = log_mahler_measure(QPoly(std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)}), 1e-9);
    CHECK(mm.lo <= logphi);
    CHECK(mm.hi >= logphi);
    CHECK(mm.width() <= 1e-9);
    auto g = algebraic_height(QPoly(std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)}), 1e-9);
    CHECK(g.lo <= logphi / 2);
    CHECK(g.hi >= logphi / 2);
}

TEST_CASE("mahler height: cyclotomic minimal polynomials give 0") {
    for (unsigned long n : {1ul, 2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 12ul, 15ul}) {
        auto e = algebraic_height(cyclotomic_polynomial(n), 1e-9);
        CHECK(e.lo <= 0.0);
        CHECK(e.hi >= 0.0);
        CHECK(e.width() <= 1e-9);
    }
}

TEST_CASE("mahler height matches numeric root products on random quadratics") {
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<long> coeff(-9, 9);
        long b = coeff(rng), c = coeff(rng);
        QPoly p(std::vector<Rat>{Rat(c), Rat(b), Rat(1)});
        if (poly_gcd(p, p.derivative()).degree() > 0 || c == 0) continue;
        double disc = static_cast<double>(b) * b - 4.0 * c;
        double expected;
        if (disc >= 0) {
            double r1 = (-b + std::sqrt(disc)) / 2.0, r2 = (-b - std::sqrt(disc)) / 2.0;
            expected = std::log(std::max(1.0, std::abs(r1))) + std::log(std::max(1.0, std::abs(r2)));
        } else {
            double mod = std::sqrt(static_cast<double>(c));
            expected = 2.0 * std::log(std::max(1.0, mod));
        }
        auto e = log_mahler_measure(p, 1e-9);
        CHECK(e.lo <= expected + 1e-7);
        CHECK(e.hi >= expected - 1e-7);
    }
}
