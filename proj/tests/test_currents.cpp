#include <doctest.h>

#include "emn/currents.hpp"

using namespace emn;

namespace {

FockVector vac(const FockModule& mod) {
    return FockVector::single(mod.vacuum(), Scalar::one());
}

FockBasis with_modes(const FockModule& mod, const FockBasis& b,
                     std::vector<std::pair<HeisenbergMode, int>> modes) {
    FockBasis r = b;
    for (auto& [hm, dummy] : modes) {
        (void)dummy;
        std::uint16_t pm = pack_mode(mod.family_of(hm.is_c, hm.index), -hm.level);
        r.cre.insert(std::upper_bound(r.cre.begin(), r.cre.end(), pm), pm);
    }
    return r;
}

Scalar qmq() { return Scalar::q(1) - Scalar::q(-1); }

// coefficient of z^{-a} w^{-b} of X(z)Y(w) v computed via the contraction and the
// normal-ordered product (independent of plain mode composition)
FockVector factorized_coeff(const FockModule& mod, const CurrentSpec& x,
                            const CurrentSpec& y, long a, long b, const FockVector& v) {
    const int R = 40;
    Crossing cr = crossing_first_principles(mod, x, y, R);
    CurrentSpec nop = normal_ordered_product(x, y);
    long G = mode_upper_bound(mod, nop, v, 1) - b;  // w-target b+g dies past this
    REQUIRE(G <= R);
    std::vector<Scalar> E(std::size_t(std::max(0L, G) + 1), Scalar::zero());
    if (G >= 0) E[0] = Scalar::one();
    for (long g = 1; g <= G; ++g) {
        Scalar s = Scalar::zero();
        for (long r = 1; r <= g; ++r)
            s += Scalar::integer(r) * cr.logco[std::size_t(r - 1)] * E[std::size_t(g - r)];
        E[std::size_t(g)] = s / Scalar::integer(g);
    }
    FockVector out;
    for (long g = 0; g <= G; ++g) {
        if (E[std::size_t(g)].is_zero()) continue;
        FockVector part = apply_modes(mod, nop, {a + cr.zexp - g, b + g}, v);
        out.axpy(cr.pre * E[std::size_t(g)], part);
    }
    return out;
}

}  // namespace

TEST_CASE("elementary current modes on the vacuum") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    const RootDatum& rd = mod.rd;
    FockVector v0 = vac(mod);
    CurrentSpec e1 = assemble_current(mod, Role::E, 1);

    // E_{1,-1} v0 = v0 (x) e^{alpha_1}
    FockVector r = apply_mode(mod, e1, -1, v0);
    FockVector expect = apply_lattice(mod, qtilde_gen(rd, 1), v0);
    CHECK(r == expect);
    // one creation level deeper: q^{-1} H_{1,-1} v0 (x) e^{alpha_1}
    FockVector r2 = apply_mode(mod, e1, -2, v0);
    FockVector deep =
        apply_heisenberg(mod, {false, 1, -1}, expect).scaled(Scalar::q(-1));
    CHECK(r2 == deep);
    // high annihilation modes vanish
    for (long k = 0; k <= 3; ++k) CHECK(apply_mode(mod, e1, k, v0).is_zero());

    // E_{2,-1} v0 = d^2 v0 (x) e^{alpha_2 + c_2}
    CurrentSpec e2 = assemble_current(mod, Role::E, 2);
    FockVector g2 = apply_lattice(mod, qtilde_gen(rd, 2), v0).scaled(Scalar::d(2));
    CHECK(apply_mode(mod, e2, -1, v0) == g2);

    // F_{2,0} v0 = 0 (the two q-difference branches cancel at creation degree 0)
    // and F_{2,-1} v0 = -d^2 c_{2,-1} v0 (x) e^{-alpha_2 - c_2}
    CurrentSpec f2 = assemble_current(mod, Role::F, 2);
    CHECK(apply_mode(mod, f2, 0, v0).is_zero());
    FockVector g2m = apply_heisenberg(
        mod, {true, 2, -1}, apply_lattice(mod, -qtilde_gen(rd, 2), v0))
                         .scaled(-Scalar::d(2));
    CHECK(apply_mode(mod, f2, -1, v0) == g2m);

    // E_{0,0} v0 = 0 and E_{0,-1} v0 = -d c_{2,-1} v0 (x) e^{-a1-a2-c2}
    CurrentSpec e0 = assemble_current(mod, Role::E, 0);
    CHECK(apply_mode(mod, e0, 0, v0).is_zero());
    WeightVector beta = -qtilde_gen(rd, 1) - qtilde_gen(rd, 2);  // -a1-a2-c2
    FockVector shifted = apply_lattice(mod, beta, v0);
    FockVector want =
        apply_heisenberg(mod, {true, 2, -1}, shifted).scaled(-Scalar::d(1));
    CHECK(apply_mode(mod, e0, -1, v0) == want);
}

TEST_CASE("K current zero mode and series") {
    FockModule l1 = make_module(2, 1, WeightSpec{WeightSpec::Li, 1, 0});
    FockVector v0 = vac(l1);
    CurrentSpec kp = assemble_current(l1, Role::Kplus, 1);
    CHECK(apply_mode(l1, kp, 0, v0) == v0.scaled(Scalar::q(1)));
    // K^+ modes at negative k vanish; K^- modes at positive k vanish
    CurrentSpec km = assemble_current(l1, Role::Kminus, 1);
    for (long k = 1; k <= 3; ++k) {
        CHECK(apply_mode(l1, kp, -k, v0).is_zero());
        CHECK(apply_mode(l1, km, k, v0).is_zero());
    }
    // K^+_{1,1} on H_{1,-1} v0: (q - q^{-1})[2] q^{<a1,L1>} d^{-M_{11}} ... via
    // the exponential's first-order term: eps(+1)(q-q^{-1}) [H_{1,1}, H_{1,-1}]
    FockBasis b = with_modes(l1, l1.vacuum(), {{{false, 1, -1}, 0}});
    FockVector w = FockVector::single(b, Scalar::one());
    FockVector got = apply_mode(l1, kp, 1, w);
    Scalar co = qmq() * qint(2) * Scalar::q(1);  // [1 A_{11}][1] d^0 * q^{<a1,L1>}
    CHECK(got == v0.scaled(co));
}

TEST_CASE("mode extraction is linear") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    CurrentSpec f1 = assemble_current(mod, Role::F, 1);
    FockVector v0 = vac(mod);
    FockBasis b = with_modes(mod, mod.vacuum(), {{{false, 1, -2}, 0}, {{true, 2, -1}, 0}});
    FockVector w = FockVector::single(b, Scalar::one());
    Scalar a = Scalar::q(3) + Scalar::d(-1);
    Scalar c = qint(2) * Scalar::dhalf(1);
    for (long k = -2; k <= 2; ++k) {
        FockVector lhs = apply_mode(mod, f1, k, v0.scaled(a) + w.scaled(c));
        FockVector rhs;
        rhs.axpy(a, apply_mode(mod, f1, k, v0));
        rhs.axpy(c, apply_mode(mod, f1, k, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("EF zero-mode bracket matches the K eigenvalue") {
    // [E_{1,0}, F_{1,0}] v0 = (K_1 - K_1^{-1})/(q - q^{-1}) v0
    for (auto spec : {WeightSpec{WeightSpec::L0, 0, 0}, WeightSpec{WeightSpec::Li, 1, 0}}) {
        FockModule mod = make_module(2, 1, spec);
        FockVector v0 = vac(mod);
        CurrentSpec e1 = assemble_current(mod, Role::E, 1);
        CurrentSpec f1 = assemble_current(mod, Role::F, 1);
        FockVector ef = apply_mode(mod, e1, 0, apply_mode(mod, f1, 0, v0));
        FockVector fe = apply_mode(mod, f1, 0, apply_mode(mod, e1, 0, v0));
        long ev = pairing_alpha(mod.rd, 1, mod.Ltilde);
        Scalar rhs = (Scalar::q(int(ev)) - Scalar::q(int(-ev))) / qmq();
        CHECK(ef - fe == v0.scaled(rhs));
    }
}

TEST_CASE("contraction closed forms verified from first principles at R=8") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}, {2, 3}}) {
        FockModule mod = make_module(m, n, WeightSpec{WeightSpec::L0, 0, 0});
        const RootDatum& rd = mod.rd;
        std::vector<PrimitiveId> prims;
        for (int i = 0; i < rd.N; ++i) {
            prims.push_back({PrimitiveId::GammaP, i});
            prims.push_back({PrimitiveId::GammaM, i});
        }
        for (int j = rd.m; j < rd.N; ++j) {
            prims.push_back({PrimitiveId::Cp, j});
            prims.push_back({PrimitiveId::Cm, j});
        }
        for (auto x : prims)
            for (auto y : prims) {
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(int(x.kind));
                CAPTURE(x.index);
                CAPTURE(int(y.kind));
                CAPTURE(y.index);
                ContractionReport rep = verify_contraction(mod, x, y, 8);
                CHECK(rep.zexp_ok);
                CHECK(rep.const_ok);
                CHECK(rep.series_ok);
                CHECK(rep.exchange_ok);
            }
    }
}

TEST_CASE("E0 E1 contraction pole sits at z = q1 w") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    ClosedForm cf = contraction(mod, {PrimitiveId::GammaP, 0}, {PrimitiveId::GammaP, 1});
    REQUIRE(cf.factors.size() == 1);
    CHECK(cf.factors[0].second == -1);           // simple pole
    CHECK(cf.factors[0].first == Scalar::q1());  // located at z = q1 w
}

TEST_CASE("operator product equals contraction times normal-ordered product") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    const RootDatum& rd = mod.rd;
    FockVector v0 = vac(mod);
    FockBasis bb =
        with_modes(mod, mod.vacuum(), {{{false, 1, -1}, 0}, {{true, 2, -1}, 0}});
    FockVector w0 = apply_lattice(mod, qtilde_gen(rd, 1),
                                  FockVector::single(bb, Scalar::one()));

    std::vector<std::pair<CurrentSpec, CurrentSpec>> pairs;
    pairs.push_back({gamma_current(mod, +1, 1), gamma_current(mod, -1, 1)});
    pairs.push_back({gamma_current(mod, +1, 2), gamma_current(mod, +1, 1)});
    pairs.push_back({gamma_current(mod, +1, 1), gamma_current(mod, +1, 1)});
    pairs.push_back({gamma_current(mod, +1, 0), gamma_current(mod, +1, 1)});
    pairs.push_back({c_current(mod, +1, 2, Scalar::one()),
                     c_current(mod, -1, 2, Scalar::one())});
    pairs.push_back({assemble_current(mod, Role::E, 2), assemble_current(mod, Role::E, 2)});

    for (const auto& [x, y] : pairs) {
        CAPTURE(x.name);
        CAPTURE(y.name);
        for (const FockVector* v : {&v0, &w0})
            for (long a = -2; a <= 2; ++a)
                for (long b = -2; b <= 2; ++b) {
                    FockVector lhs = apply_mode(mod, x, a, apply_mode(mod, y, b, *v));
                    FockVector rhs = factorized_coeff(mod, x, y, a, b, *v);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("mode upper bound is a sound annihilation cutoff") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::Li, 1, 0});
    auto vecs = test_vectors(mod, 2, 1);
    for (auto role : {Role::E, Role::F, Role::Kplus, Role::Kminus})
        for (int i = 0; i < mod.rd.N; ++i) {
            CurrentSpec cur = assemble_current(mod, role, i);
            for (std::size_t t = 0; t < vecs.size(); t += 7) {
                FockVector v = FockVector::single(vecs[t], Scalar::one());
                long nb = mode_upper_bound(mod, cur, v);
                for (long k = nb + 1; k <= nb + 3; ++k)
                    CHECK(apply_mode(mod, cur, k, v).is_zero());
            }
        }
}

TEST_CASE("current algebra cache is consistent") {
    CurrentAlgebra alg(make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0}));
    const CurrentSpec& e1 = alg.get(Role::E, 1);
    FockVector v0 = vac(alg.mod());
    FockVector a = alg.mode(e1, -2, v0);
    FockVector b = apply_mode(alg.mod(), e1, -2, v0);
    CHECK(a == b);
    CHECK(alg.mode(e1, -2, v0) == b);  // cached path
    CHECK(alg.cache_size() >= 1);
}
