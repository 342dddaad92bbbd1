#include <doctest.h>

#include "emn/coeffs.hpp"

using namespace emn;

namespace {

void expect_pass(const CoeffReport& rep) {
    INFO(rep.id, ": ", rep.first_failure);
    CHECK(rep.pass);
    CHECK(rep.checks > 0);
    CHECK(rep.failures == 0);
}

// truncated power series in t, coefficients s[0..R]
using Series = std::vector<Scalar>;

Series series_one(int R) {
    Series s(std::size_t(R) + 1);
    s[0] = Scalar::one();
    return s;
}

Series series_mul(const Series& a, const Series& b) {
    Series c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// (1 - alpha t) as a truncated series
Series series_lin(const Scalar& alpha, int R) {
    Series s = series_one(R);
    if (R >= 1) s[1] = -alpha;
    return s;
}

// 1/(1 - beta t) as a geometric series
Series series_geo(const Scalar& beta, int R) {
    Series s(std::size_t(R) + 1);
    s[0] = Scalar::one();
    for (int k = 1; k <= R; ++k) s[std::size_t(k)] = s[std::size_t(k - 1)] * beta;
    return s;
}

// exp of a series with zero constant term
Series series_exp(const Series& x, int R) {
    Series acc = series_one(R);   // x^k / k!
    Series out = series_one(R);
    Int fact(1);
    for (int k = 1; k <= R; ++k) {
        acc = series_mul(acc, x);
        fact *= Int(k);
        Scalar invf = Scalar(fact).inv();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += invf * acc[i];
    }
    return out;
}

bool series_eq(const Series& a, const Series& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("determinant of the coefficient matrix, closed form") {
    // small ranks: exact determinant matches the closed form up to a global
    // sign; the observed signs are frozen here (+1 for n=1 data, -1 for n=2)
    for (auto [m, n, sign] : {std::tuple{2, 1, 1}, {1, 2, -1}, {3, 1, 1}, {3, 2, -1}}) {
        RootDatum rd = build_root_datum(m, n);
        for (long r : {1L, 2L, 3L}) {
            DetResult res = toroidal_det(r, rd);
            INFO("m=", m, " n=", n, " r=", r);
            CHECK(res.match());
            CHECK(res.sign == sign);
            CHECK_FALSE(res.det.is_zero());
        }
    }
}

TEST_CASE("determinant oracle: explicit 3x3 expansion for (1,2), r=2") {
    // independent cofactor expansion of ([rA_{ij}] d^{-rM_{ij}}) for the
    // rank-3 datum, kept free of the elimination code path
    RootDatum rd = build_root_datum(1, 2);
    const long r = 2;
    auto entry = [&](int i, int j) {
        return qint(r * rd.A(i, j)) * Scalar::d(int(-r * rd.M(i, j)));
    };
    Scalar det = entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1)) -
                 entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0)) +
                 entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0));
    DetResult res = toroidal_det(r, rd);
    CHECK(res.det == det);
    // +-[2]^3 (d^-2 + d^2 - q^-2 - q^2); the sign observed for (1,2) is -1
    Scalar closed = qint(2).pow(3) * (Scalar::d(-2) + Scalar::d(2) -
                                      Scalar::q(-2) - Scalar::q(2));
    CHECK(res.closed == closed);
    CHECK(det == -closed);
}

TEST_CASE("gamma solves its system with both normalizations") {
    for (auto [m, n] : {std::pair{2, 1}, {3, 2}}) {
        RootDatum rd = build_root_datum(m, n);
        for (long r : {1L, 2L, 3L, -1L, -2L, -3L}) {
            HLinearCombo g = solve_gamma(r, rd);
            INFO("m=", m, " n=", n, " r=", r);
            for (int j = 1; j < rd.N; ++j) {
                Scalar res;
                for (int i = 0; i < rd.N; ++i)
                    res += g.coeff(i) * qint(r * rd.A(i, j)) *
                           Scalar::d(int(-r * rd.M(i, j)));
                CHECK(res.is_zero());
            }
            if (r < 0) CHECK(g.coeff(0).is_one());
        }
        // commutator normalization, r = 1 (bilinear-form contraction oracle)
        HLinearCombo gp = solve_gamma(1, rd), gm = solve_gamma(-1, rd);
        Scalar want = qint(n - m) * (Scalar::cpow(1) - Scalar::cpow(-1)) /
                      (Scalar::q(1) - Scalar::q(-1));
        CHECK(toroidal_pair(rd, gp, gm) == want);
    }
}

TEST_CASE("beta closed form and system") {
    RootDatum rd = build_root_datum(2, 1);
    // (2,1), i=1, r=1: m-n-i = 0, so (1 + q)/(q - q^{-1})
    Scalar b11 = beta(1, 1, rd);
    CHECK(b11 == (Scalar::one() + Scalar::q(1)) / (Scalar::q(1) - Scalar::q(-1)));
    // (2,1), r=1, j=1: -beta_0 + [2] beta_1 - beta_2 = 0
    Scalar res = -beta(0, 1, rd) + qint(2) * beta(1, 1, rd) - beta(2, 1, rd);
    CHECK(res.is_zero());
    // full system over several data and levels
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}, {3, 2}}) {
        RootDatum rd2 = build_root_datum(m, n);
        for (long r : {1L, 2L, 3L, -1L, -2L, -3L}) {
            for (int j = 1; j < rd2.N; ++j) {
                Scalar s;
                for (int i = 0; i < rd2.N; ++i)
                    s += beta(i, r, rd2) * qint(r * rd2.A(i, j));
                INFO("m=", m, " n=", n, " r=", r, " j=", j);
                CHECK(s.is_zero());
            }
        }
    }
}

TEST_CASE("h-tilde zero maps to the zero-node toroidal Heisenberg") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}, {3, 2}}) {
        RootDatum rd = build_root_datum(m, n);
        expect_pass(verify_htilde0(3, rd));
        // leading coefficient: beta_0 / gamma_0
        for (long r : {2L, -2L}) {
            HLinearCombo ht = htilde0(r, rd);
            CHECK(ht.coeff(0) == beta(0, r, rd) / solve_gamma(r, rd).coeff(0));
        }
    }
}

TEST_CASE("A/B combinations match their displayed coefficients") {
    RootDatum rd = build_root_datum(2, 1);
    for (long r : {1L, 2L}) {
        ABQuad ab = build_AB(r, rd);
        Scalar pref = (Scalar::q(1) - Scalar::q(-1)) /
                      (Scalar::cpow(int(r)) - Scalar::cpow(int(-r)));
        HLinearCombo ht = htilde0(r, rd), hm = htilde0(-r, rd);
        // coefficient of h_{0,r} in A_r comes only from the h~ constituent
        CHECK(ab.Ap.coeff(0) == -pref * ht.coeff(0));
        CHECK(ab.Bp.coeff(0) == pref * Scalar::cpow(int(r)) * ht.coeff(0));
        // coefficient of h_{i,-r} in A_{-r} for i <= m:
        // (q-q^{-1}) c^{-r} (h~ part + q^{-ir}) / (c^r - c^{-r})
        for (int i = 1; i <= rd.m; ++i) {
            Scalar want = pref * Scalar::cpow(int(-r)) *
                          (hm.coeff(i) + Scalar::q(int(-i * r)));
            CHECK(ab.Am.coeff(i) == want);
        }
    }
}

TEST_CASE("zero-node K factorizations reduce to per-level identities") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}}) {
        RootDatum rd = build_root_datum(m, n);
        for (const char* id :
             {"k0-minus-left", "k0-minus-right", "k0-plus-left", "k0-plus-right"})
            expect_pass(verify_exp_identity(id, 4, rd));
    }
}

TEST_CASE("adjoint factors of the A/B exponentials on the dressed currents") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}}) {
        RootDatum rd = build_root_datum(m, n);
        for (int k = 1; k <= 8; ++k)
            expect_pass(verify_exp_identity("cont" + std::to_string(k), 4, rd));
    }
}

TEST_CASE("central exchange factors between A/B exponentials") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}}) {
        RootDatum rd = build_root_datum(m, n);
        for (int k = 9; k <= 12; ++k)
            expect_pass(verify_exp_identity("cont" + std::to_string(k), 4, rd));
    }
}

TEST_CASE("exchange series oracle: exp of commutators vs rational expansion") {
    // Taylor-expansion oracle independent of the log-coefficient route: the
    // exponential of the accumulated central commutators must reproduce the
    // claimed rational function's power series directly
    RootDatum rd = build_root_datum(2, 1);
    const int R = 4;

    // the identities hold on the evaluation central character, for either
    // square root of c^2 = (dq)^{n-m}
    Series comm(std::size_t(R) + 1);
    Series comm10(std::size_t(R) + 1);
    for (long r = 1; r <= R; ++r) {
        ABQuad ab = build_AB(r, rd);
        comm[std::size_t(r)] = central_specialize(affine_pair(rd, ab.Ap, ab.Am), rd);
        comm10[std::size_t(r)] =
            central_specialize(affine_pair(rd, ab.Ap, ab.Bm), rd, -1);
    }
    // order-1 coefficient of log((1-t)^2/((1-q2 t)(1-q2^{-1}t))): q^2+q^{-2}-2
    CHECK(comm[1] == Scalar::q2() + Scalar::q2().inv() - Scalar::integer(2));

    // (1-t)^2 / ((1-q2 t)(1-q2^{-1} t))
    Series rat = series_mul(series_mul(series_lin(Scalar::one(), R),
                                       series_lin(Scalar::one(), R)),
                            series_mul(series_geo(Scalar::q2(), R),
                                       series_geo(Scalar::q2().inv(), R)));
    CHECK(series_eq(series_exp(comm, R), rat));

    // (1-cq2 t)(1-c^{-1}q2^{-1} t) / ((1-ct)(1-c^{-1}t)), on the same root
    Scalar c = Scalar::cpow(1);
    Series rat10 = series_mul(
        series_mul(series_lin(c * Scalar::q2(), R),
                   series_lin(c.inv() * Scalar::q2().inv(), R)),
        series_mul(series_geo(c, R), series_geo(c.inv(), R)));
    for (Scalar& s : rat10) s = central_specialize(s, rd, -1);
    CHECK(series_eq(series_exp(comm10, R), rat10));
}

TEST_CASE("free-field contraction groups through the coefficient interface") {
    RootDatum rd = build_root_datum(2, 1);
    for (const char* id : {"cont-gii", "cont-gij", "cont-giim", "cont-gijm",
                           "cont-cc1", "cont-cc2"})
        expect_pass(verify_exp_identity(id, 4, rd));
}

TEST_CASE("coefficient invariants hold on small data") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}}) {
        RootDatum rd = build_root_datum(m, n);
        expect_pass(verify_coeff_invariants(3, rd));
    }
}
