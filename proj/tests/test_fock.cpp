#include <doctest.h>

#include "emn/fock.hpp"

using namespace emn;

namespace {

FockVector vac(const FockModule& mod) {
    return FockVector::single(mod.vacuum(), Scalar::one());
}

FockVector basis_vec(const FockModule& mod, const FockBasis& b) {
    (void)mod;
    return FockVector::single(b, Scalar::one());
}

}  // namespace

TEST_CASE("heisenberg action examples") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    FockVector v0 = vac(mod);
    FockVector w = apply_heisenberg(mod, {false, 1, -1}, v0);
    FockVector hw = apply_heisenberg(mod, {false, 1, 1}, w);
    CHECK(hw == v0.scaled(qint(2)));  // [2] v0
    for (int i = 0; i < 3; ++i)
        for (int r = 1; r <= 3; ++r)
            CHECK(apply_heisenberg(mod, {false, i, r}, v0).is_zero());
    FockVector cw = apply_heisenberg(mod, {true, 2, -1}, v0);
    CHECK(apply_heisenberg(mod, {true, 2, 1}, cw) == v0);  // [1]^2 = 1
    // mixed H-c commute to zero contraction
    CHECK(apply_heisenberg(mod, {false, 2, 1}, cw).is_zero());
}

TEST_CASE("heisenberg commutators realized on creation monomials") {
    for (auto [m, n] : {std::pair{2, 1}, {1, 2}}) {
        FockModule mod = make_module(m, n, WeightSpec{WeightSpec::L0, 0, 0});
        auto mons = creation_monomials(mod, 4);
        std::vector<HeisenbergMode> gens;
        for (int i = 0; i < mod.rd.N; ++i) gens.push_back({false, i, 0});
        for (int j = mod.rd.m; j < mod.rd.N; ++j) gens.push_back({true, j, 0});
        for (auto ga : gens)
            for (auto gb : gens)
                for (int r = -2; r <= 2; ++r)
                    for (int s = -2; s <= 2; ++s) {
                        if (r == 0 || s == 0) continue;
                        HeisenbergMode a = ga, b = gb;
                        a.level = r;
                        b.level = s;
                        Scalar comm = heis_comm(mod.rd, a, b);
                        for (const auto& bas : mons) {
                            FockVector v = basis_vec(mod, bas);
                            FockVector ab =
                                apply_heisenberg(mod, a, apply_heisenberg(mod, b, v));
                            FockVector ba =
                                apply_heisenberg(mod, b, apply_heisenberg(mod, a, v));
                            CHECK(ab - ba == v.scaled(comm));
                        }
                    }
    }
}

TEST_CASE("lattice action signs") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    const RootDatum& rd = mod.rd;
    FockVector v0 = vac(mod);
    WeightVector g1 = qtilde_gen(rd, 1);  // alpha-bar_1
    FockVector w1 = apply_lattice(mod, g1, v0);
    REQUIRE(w1.size() == 1);
    CHECK(w1.terms().begin()->second == Scalar::one());  // empty reordering
    // e^{alpha_2 + c_2} past e^{alpha_1}: one transposition, eps(2,1) = -1
    WeightVector g2 = qtilde_gen(rd, 2);
    FockVector w21 = apply_lattice(mod, g2, w1);
    REQUIRE(w21.size() == 1);
    CHECK(w21.terms().begin()->second == -Scalar::one());
    // inverse element
    FockVector back = apply_lattice(mod, -g1, apply_lattice(mod, g1, w21));
    CHECK(back == w21);
    CHECK_THROWS(apply_lattice(mod, c_basis(rd, 2), v0));  // not in Q-tilde
}

TEST_CASE("lattice associativity and parity over a ball") {
    for (auto [m, n] : {std::pair{2, 1}, {2, 3}}) {
        FockModule mod = make_module(m, n, WeightSpec{WeightSpec::L0, 0, 0});
        auto ball = lattice_ball(mod, 1);
        FockVector v0 = vac(mod);
        for (const auto& beta : ball)
            for (const auto& gamma : ball) {
                FockVector lhs = apply_lattice(mod, beta, apply_lattice(mod, gamma, v0));
                int sign = reorder_sign(mod.rd, beta, gamma);
                FockVector rhs = apply_lattice(mod, beta + gamma, v0)
                                     .scaled(Scalar::integer(sign));
                CHECK(lhs == rhs);
                // parity additivity
                const FockBasis& lb = lhs.terms().begin()->first;
                int pb = ((beta.alpha[std::size_t(mod.rd.m)] % 2) + 2) % 2;
                int pg = ((gamma.alpha[std::size_t(mod.rd.m)] % 2) + 2) % 2;
                CHECK(mod.basis_parity(lb) == (pb + pg) % 2);
            }
    }
}

TEST_CASE("zero modes") {
    FockModule l1 = make_module(2, 1, WeightSpec{WeightSpec::Li, 1, 0});
    FockVector v0 = vac(l1);
    auto r = apply_zero_mode(l1, ZeroModeKind::qAlpha, 1, 1, v0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == v0.scaled(Scalar::q(1)));  // q^{<a_1, L_1>} = q

    FockModule l0 = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    FockVector w1 = apply_lattice(l0, qtilde_gen(l0.rd, 1), vac(l0));
    auto zh = apply_zero_mode(l0, ZeroModeKind::zH, 1, 1, w1);
    REQUIRE(zh.size() == 1);
    CHECK(zh.count(2) == 1);  // z-exponent <a_1,a_1> = 2
    CHECK(zh[2] == w1);       // d^0 = 1

    auto zc = apply_zero_mode(l0, ZeroModeKind::zC, 1, 2, vac(l0));
    REQUIRE(zc.size() == 1);
    CHECK(zc.count(0) == 1);

    // with the a=1 weight, <c_m, Ltilde> = -1
    FockModule la = make_module(2, 1, WeightSpec{WeightSpec::aLm, 0, 1});
    auto zc2 = apply_zero_mode(la, ZeroModeKind::zC, 1, 2, vac(la));
    REQUIRE(zc2.size() == 1);
    CHECK(zc2.count(-1) == 1);
}

TEST_CASE("test vector plans") {
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    // families: H_0,H_1,H_2,c_2 -> monomials of degree <= 3 over 4 families
    auto mons = creation_monomials(mod, 3);
    for (const auto& b : mons) CHECK(mod.creation_degree(b) <= 3);
    // degree generating count: multisets over 4 families, weight<=3:
    // deg0:1, deg1:4, deg2:4+10=14, deg3:4+16+20=40 -> 59
    CHECK(mons.size() == 59);
    auto ball = lattice_ball(mod, 1);
    CHECK(ball.size() == 9);  // 3^{N-1} = 3^2
    for (const auto& w : ball) CHECK(in_qtilde(mod.rd, w));
    CHECK(test_vectors(mod, 3, 1).size() == 59 * 9);
}
