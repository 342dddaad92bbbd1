#include <doctest.h>

#include <random>

#include "emn/poly.hpp"
#include "emn/scalar.hpp"

using namespace emn;

namespace {

// deterministic small random scalars for property tests
Scalar random_scalar(std::mt19937& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> coef(-4, 4), expo(-2, 2), len(1, 4);
    auto rand_poly = [&](bool nz) {
        Poly p;
        for (int tries = 0; tries < 12; ++tries) {
            p = Poly();
            int L = len(rng);
            for (int t = 0; t < L; ++t)
                p += Poly::mono(coef(rng), expo(rng), expo(rng), expo(rng));
            if (!nz || !p.is_zero()) break;
        }
        if (nz && p.is_zero()) p = Poly::one();
        return p;
    };
    Poly num = rand_poly(nonzero);
    Poly den = rand_poly(true);
    return Scalar(num, den);
}

}  // namespace

TEST_CASE("polynomial basics") {
    Poly a = Poly::mono(3, 2, 0, 0) + Poly::mono(-1, 0, 1, 0);  // 3u^2 - v
    Poly b = Poly::mono(1, -2, 0, 0);                           // u^{-2}
    Poly p = a * b;
    CHECK(p == Poly::constant(3) + Poly::mono(-1, -2, 1, 0));
    CHECK((a - a).is_zero());
    CHECK(a + Poly() == a);
    CHECK(Poly::one() * a == a);
}

TEST_CASE("polynomial exact division and gcd") {
    Poly u1 = Poly::mono(1, 1, 0, 0) + Poly::one();   // u + 1
    Poly v1 = Poly::mono(1, 0, 1, 0) + Poly::one();   // v + 1
    Poly v2 = Poly::mono(1, 0, 1, 0) - Poly::one();   // v - 1
    CHECK(Poly::divexact(u1 * v1, u1) == v1);
    CHECK(Poly::gcd(u1 * v1, u1 * v2) == u1);
    CHECK(Poly::gcd(u1 * u1 * v1, u1 * v1 * v1) == u1 * v1);
    // constants and contents
    CHECK(Poly::gcd(Poly::constant(6), Poly::constant(4)) == Poly::constant(2));
    CHECK(Poly::gcd(Int(2) * u1, Int(4) * u1) == Int(2) * u1);
    // Laurent inputs: gcd ignores monomial units
    Poly lu = u1 * Poly::mono(1, -3, 2, 0);
    CHECK(Poly::gcd(lu, u1 * v1) == u1);
    // three-variable case
    Poly c1 = Poly::mono(1, 0, 0, 1) + Poly::mono(2, 1, 0, 0);  // c + 2u
    CHECK(Poly::gcd(c1 * v1 * u1, c1 * v2) == c1);
}

TEST_CASE("qint examples") {
    CHECK(qint(0).is_zero());
    CHECK(qint(1).is_one());
    // [2] = q + q^{-1}, via the polynomial-division oracle
    Scalar lhs(Poly::mono(1, 4, 0, 0) - Poly::mono(1, -4, 0, 0),
               Poly::mono(1, 2, 0, 0) - Poly::mono(1, -2, 0, 0));
    CHECK(lhs == qint(2));
    CHECK(qint(2) == Scalar::q(1) + Scalar::q(-1));
    for (long k = 1; k <= 6; ++k) CHECK(qint(-k) == -qint(k));
}

TEST_CASE("qint addition identity") {
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b) {
            Scalar lhs = qint(a + b);
            Scalar rhs = Scalar::q(int(b)) * qint(a) + Scalar::q(int(-a)) * qint(b);
            CHECK(scalar_eq(lhs, rhs));
        }
}

TEST_CASE("scalar_eq examples") {
    // (q^2 - 1)/(q - 1) = q + 1
    Scalar a(Poly::mono(1, 4, 0, 0) - Poly::one(), Poly::mono(1, 2, 0, 0) - Poly::one());
    Scalar b = Scalar::q() + Scalar::one();
    CHECK(scalar_eq(a, b));
    CHECK_FALSE(scalar_eq(qint(2) * qint(3), qint(6)));
    // [2][3] = q^3 + 2q + 2q^{-1} + q^{-3}
    Scalar expect = Scalar::q(3) + Scalar::integer(2) * Scalar::q(1) +
                    Scalar::integer(2) * Scalar::q(-1) + Scalar::q(-3);
    CHECK(scalar_eq(qint(2) * qint(3), expect));
    CHECK(scalar_eq(Scalar::q1() * Scalar::q2() * Scalar::q3(), Scalar::one()));
}

TEST_CASE("field axioms on random scalars") {
    std::mt19937 rng(20260826);
    for (int it = 0; it < 60; ++it) {
        Scalar a = random_scalar(rng);
        Scalar b = random_scalar(rng);
        Scalar c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar::zero());
        Scalar nz = random_scalar(rng, true);
        CHECK(nz * nz.inv() == Scalar::one());
    }
}

TEST_CASE("canonicalization idempotent") {
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        Scalar a = random_scalar(rng);
        Scalar again(a.num(), a.den());
        CHECK(again.num() == a.num());
        CHECK(again.den() == a.den());
        // canonical invariants
        if (!a.is_zero()) {
            Exp3 m = a.den().min_exponents();
            CHECK(m.eu == 0);
            CHECK(m.ev == 0);
            CHECK(m.ec == 0);
            CHECK(a.den().leading().second > 0);
            Poly g = Poly::gcd(a.num(), a.den());
            CHECK(g.is_constant());
            CHECK(g.content() == 1);
        }
    }
}

TEST_CASE("pow and variable flips") {
    Scalar x = qint(3) / (Scalar::one() + Scalar::d());
    CHECK(x.pow(3) == x * x * x);
    CHECK(x.pow(-2) == (x * x).inv());
    CHECK(x.pow(0) == Scalar::one());
    CHECK(Scalar::d(2).flip_v() == Scalar::d(-2));
    CHECK(Scalar::q(3).flip_u() == Scalar::q(-3));
    Scalar y = (Scalar::d() - Scalar::q()) / (Scalar::d() + Scalar::one());
    CHECK(y.flip_v().flip_v() == y);
}
