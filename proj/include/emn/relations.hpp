#ifndef EMN_RELATIONS_HPP
#define EMN_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "emn/currents.hpp"

namespace emn {

enum class RelationId {
    CK,
    KK1,
    KK2,
    KE,
    KF,
    EF,
    EE0,
    EEquad,
    FF0,
    FFquad,
    Serre1,
    Serre2,
    Serre3,
    Serre4,
    Serre5,
    Serre6,
    Serre7,
    Serre8,
    HE,
    HF,
    HH
};

std::string relation_name(RelationId id);

struct RelationReport {
    std::string id;
    int i = -1, j = -1;
    bool applicable = true;
    bool pass = true;
    long checks = 0;    // (coefficient tuple, test vector) pairs inspected
    long failures = 0;  // nonzero residuals
    std::string first_failure;
    double ms = 0.0;
};

// Verifies the defining relations on the truncated level-(1,0) module:
// creation degree <= D, lattice ball <= B, mode window |a| <= W; C acts as q.
class RelationVerifier {
  public:
    RelationVerifier(int m, int n, const WeightSpec& spec, int D, int B, int W);

    const FockModule& mod() const { return alg_.mod(); }
    int D() const { return D_; }
    int B() const { return B_; }
    int W() const { return W_; }

    bool applicable(RelationId id, int i, int j) const;
    RelationReport verify(RelationId id, int i, int j = -1);
    // every applicable (id, i, j) instance
    std::vector<RelationReport> verify_all();

    // C = q and K = prod K_i acts as the identity (level (1,0))
    RelationReport verify_level();
    // every test vector is killed by all modes above its cutoff N_v <= D + W + 2
    RelationReport verify_admissibility();

  private:
    CurrentAlgebra alg_;
    int D_, B_, W_;
    std::vector<FockBasis> vecs_;

    struct Factor {
        const CurrentSpec* cur;
        int var;
        long shift;  // mode index = k[var] + shift
    };
    struct Word {
        Scalar co;
        std::vector<Factor> f;  // leftmost first
    };
    struct Expr {
        std::vector<Word> words;
        int parity = 0;
    };

    Expr atom(Role role, int index, int var) const;
    static Expr bracket(const Expr& a, const Expr& b, const Scalar& q, int sign = 1);
    static Expr swap_vars(const Expr& e, int v1, int v2);
    static Expr sub(Expr a, const Expr& b);
    static Expr add(Expr a, const Expr& b);

    void check_expr(const Expr& e, int nvars, RelationReport& rep);

    void do_CK(int i, int j, RelationReport& rep);
    void do_KK1(int i, int j, RelationReport& rep);
    void do_KK2(int i, int j, RelationReport& rep);
    void do_KEKF(RelationId id, int i, int j, RelationReport& rep);
    void do_EF(int i, int j, RelationReport& rep);
    void do_quad(RelationId id, int i, int j, RelationReport& rep);
    void do_serre12(RelationId id, int i, int j, RelationReport& rep);
    void do_serre34(RelationId id, int i, RelationReport& rep);
    void do_serre5678(RelationId id, RelationReport& rep);
    void do_H(RelationId id, int i, int j, RelationReport& rep);

    void record_residual(RelationReport& rep, const FockVector& res,
                         const std::string& where);
};

}  // namespace emn

#endif
