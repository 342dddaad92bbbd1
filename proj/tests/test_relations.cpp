#include <doctest.h>

#include "emn/relations.hpp"

using namespace emn;

namespace {

void expect_pass(const RelationReport& r) {
    INFO(r.id, " (", r.i, ",", r.j, ") ", r.first_failure);
    CHECK(r.applicable);
    CHECK(r.pass);
    CHECK(r.checks > 0);
    CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("Cartan-type relations on the (2,1) module") {
    RelationVerifier ver(2, 1, WeightSpec{WeightSpec::L0, 0, 0}, 2, 1, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            expect_pass(ver.verify(RelationId::CK, i, j));
            expect_pass(ver.verify(RelationId::KK1, i, j));
            expect_pass(ver.verify(RelationId::KK2, i, j));
        }
    expect_pass(ver.verify_level());
    expect_pass(ver.verify_admissibility());
}

TEST_CASE("K-E and K-F relations on the (2,1) module") {
    RelationVerifier ver(2, 1, WeightSpec{WeightSpec::Li, 1, 0}, 2, 1, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            expect_pass(ver.verify(RelationId::KE, i, j));
            expect_pass(ver.verify(RelationId::KF, i, j));
        }
}

TEST_CASE("E-F relations on the (2,1) module") {
    RelationVerifier ver(2, 1, WeightSpec{WeightSpec::L0, 0, 0}, 2, 1, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) expect_pass(ver.verify(RelationId::EF, i, j));
}

TEST_CASE("E-E and F-F relations on the (2,1) module") {
    RelationVerifier ver(2, 1, WeightSpec{WeightSpec::L0, 0, 0}, 2, 1, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            RelationId ide = ver.mod().rd.A(i, j) == 0 ? RelationId::EE0
                                                       : RelationId::EEquad;
            RelationId idf = ver.mod().rd.A(i, j) == 0 ? RelationId::FF0
                                                       : RelationId::FFquad;
            expect_pass(ver.verify(ide, i, j));
            expect_pass(ver.verify(idf, i, j));
        }
}

TEST_CASE("Heisenberg cross relations on the (2,1) module") {
    RelationVerifier ver(2, 1, WeightSpec{WeightSpec::L0, 0, 0}, 2, 1, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            expect_pass(ver.verify(RelationId::HE, i, j));
            expect_pass(ver.verify(RelationId::HF, i, j));
            expect_pass(ver.verify(RelationId::HH, i, j));
        }
}

TEST_CASE("cubic Serre relations on the (2,1) module") {
    RelationVerifier ver(2, 1, WeightSpec{WeightSpec::L0, 0, 0}, 2, 1, 2);
    // the only even node is 1
    for (int j : {0, 2}) {
        expect_pass(ver.verify(RelationId::Serre1, 1, j));
        expect_pass(ver.verify(RelationId::Serre2, 1, j));
    }
    CHECK_FALSE(ver.applicable(RelationId::Serre1, 0, 1));
    CHECK_FALSE(ver.applicable(RelationId::Serre3, 0, -1));  // mn = 2
}

TEST_CASE("quartic Serre relations on the (3,1) module") {
    RelationVerifier ver(3, 1, WeightSpec{WeightSpec::L0, 0, 0}, 2, 0, 1);
    for (int i : {0, 3}) {
        expect_pass(ver.verify(RelationId::Serre3, i, -1));
        expect_pass(ver.verify(RelationId::Serre4, i, -1));
    }
}

TEST_CASE("quintic Serre relations, small window") {
    RelationVerifier v21(2, 1, WeightSpec{WeightSpec::L0, 0, 0}, 1, 0, 1);
    expect_pass(v21.verify(RelationId::Serre5, -1, -1));
    expect_pass(v21.verify(RelationId::Serre6, -1, -1));
    CHECK_FALSE(v21.applicable(RelationId::Serre7, -1, -1));
    RelationVerifier v12(1, 2, WeightSpec{WeightSpec::L0, 0, 0}, 1, 0, 1);
    expect_pass(v12.verify(RelationId::Serre7, -1, -1));
    expect_pass(v12.verify(RelationId::Serre8, -1, -1));
}

TEST_CASE("spot checks on the (1,2) module") {
    RelationVerifier ver(1, 2, WeightSpec{WeightSpec::L0, 0, 0}, 2, 1, 2);
    for (int i = 0; i < 3; ++i) {
        expect_pass(ver.verify(RelationId::EF, i, i));
        expect_pass(ver.verify(RelationId::EEquad, i, i == 2 ? 1 : i + 1));
    }
    expect_pass(ver.verify_level());
}

TEST_CASE("a wrong coefficient is detected") {
    // oracle hygiene: [H_{1,1}, E_{1,k}] with a deliberately wrong scalar
    FockModule mod = make_module(2, 1, WeightSpec{WeightSpec::L0, 0, 0});
    CurrentAlgebra alg(std::move(mod));
    const CurrentSpec& E = alg.get(Role::E, 1);
    FockVector v = FockVector::single(alg.mod().vacuum(), Scalar::one());
    HeisenbergMode h{false, 1, 1};
    long k = -2;
    FockVector lhs = apply_heisenberg(alg.mod(), h, alg.mode(E, k, v)) -
                     alg.mode(E, k, apply_heisenberg(alg.mod(), h, v));
    // correct coefficient: [A_{11}] q^{-1} = [2]/q (C = q)
    Scalar good = qint(2) * Scalar::q(-1);
    CHECK(lhs == alg.mode(E, k + 1, v).scaled(good));
    CHECK_FALSE(lhs == alg.mode(E, k + 1, v).scaled(qint(2)));
}
