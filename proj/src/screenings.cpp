#include "emn/screenings.hpp"

#include <chrono>

namespace emn {

namespace {

class Timer {
  public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_;
};

// number of C-current factors of index i inside E_j / F_j: one of index m in
// X_m, indices {j, j-1} in X_j for j in the negative range, index N-1 in X_0
int c_factor_count(const RootDatum& rd, int i, int j) {
    j = rd.mod(j);
    int c = 0;
    if (j == rd.m) {
        if (i == rd.m) ++c;
    } else if (j > rd.m && j < rd.N) {
        if (i == j) ++c;
        if (i == j - 1) ++c;
    } else if (j == 0) {
        if (i == rd.N - 1) ++c;
    }
    return c;
}

}  // namespace

ScreeningVerifier::ScreeningVerifier(int m, int n, const WeightSpec& spec, int D, int B,
                                     int W)
    : alg_(make_module(m, n, spec)), D_(D), B_(B), W_(W) {
    vecs_ = test_vectors(alg_.mod(), D, B);
}

std::vector<int> ScreeningVerifier::indices() const {
    const RootDatum& rd = alg_.mod().rd;
    std::vector<int> r;
    for (int j = rd.m; j < rd.N; ++j) r.push_back(j);
    return r;
}

const CurrentSpec& ScreeningVerifier::c_cur(int pm, int i) {
    std::string key = (pm > 0 ? "scr:C+_" : "scr:C-_") + std::to_string(i);
    return alg_.store(key, c_current(alg_.mod(), pm, i, Scalar::one()));
}

FockVector ScreeningVerifier::xi(int i, const FockVector& v) {
    // z^0 coefficient of C^-_i(z)
    return alg_.mode(c_cur(-1, i), 0, v);
}

FockVector ScreeningVerifier::eta(int i, const FockVector& v) {
    // z^{-1} coefficient of C^+_i(z)
    return alg_.mode(c_cur(+1, i), 1, v);
}

void ScreeningVerifier::record(ScreeningReport& rep, const FockVector& res,
                               const std::string& where) {
    ++rep.checks;
    if (res.is_zero()) return;
    rep.pass = false;
    ++rep.failures;
    if (rep.first_failure.empty())
        rep.first_failure = where + " residual " + res.str(alg_.mod());
}

ScreeningReport ScreeningVerifier::verify_system() {
    Timer t;
    ScreeningReport rep;
    rep.id = "screening-system";
    std::vector<int> idx = indices();
    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v = FockVector::single(vecs_[vi], Scalar::one());
        std::string vtag = " on vector #" + std::to_string(vi);
        for (int i : idx) {
            for (int j : idx) {
                // each index carries its own fermionic pair: same-index
                // brackets are anticommutators (the (z-w) contraction factor
                // is antisymmetric); distinct indices have trivial
                // contractions and commute outright
                Scalar sg = Scalar::integer(i == j ? 1 : -1);
                FockVector xe = xi(i, eta(j, v));
                xe.axpy(sg, eta(j, xi(i, v)));
                if (i == j) xe += v.scaled(Scalar::integer(-1));
                record(rep, xe,
                       "[xi_" + std::to_string(i) + ",eta_" + std::to_string(j) + "]" +
                           (i == j ? " - 1" : "") + vtag);

                FockVector xx = xi(i, xi(j, v));
                xx.axpy(sg, xi(j, xi(i, v)));
                record(rep, xx,
                       "[xi_" + std::to_string(i) + ",xi_" + std::to_string(j) + "]" +
                           vtag);

                FockVector ee = eta(i, eta(j, v));
                ee.axpy(sg, eta(j, eta(i, v)));
                record(rep, ee,
                       "[eta_" + std::to_string(i) + ",eta_" + std::to_string(j) + "]" +
                           vtag);
            }
        }
    }
    rep.ms = t.ms();
    return rep;
}

ScreeningReport ScreeningVerifier::verify_module_commutation() {
    Timer t;
    ScreeningReport rep;
    rep.id = "screening-module-commutation";
    const FockModule& mod = alg_.mod();
    const RootDatum& rd = mod.rd;
    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v = FockVector::single(vecs_[vi], Scalar::one());
        std::string vtag = " on vector #" + std::to_string(vi);
        for (int i : indices()) {
            // E and F modes in the window: eta_i anticommutes with X_j when
            // X_j contains an odd number of C factors of index i (trivial
            // contractions commute; each same-index C factor flips the sign)
            for (int j = 0; j < rd.N; ++j) {
                for (Role role : {Role::E, Role::F}) {
                    const CurrentSpec& X = alg_.get(role, j);
                    Scalar sg = Scalar::integer(c_factor_count(rd, i, j) % 2 ? 1 : -1);
                    for (long k = -W_; k <= W_; ++k) {
                        FockVector res = eta(i, alg_.mode(X, k, v));
                        res.axpy(sg, alg_.mode(X, k, eta(i, v)));
                        record(rep, res,
                               "[eta_" + std::to_string(i) + "," +
                                   (role == Role::E ? "E_" : "F_") + std::to_string(j) +
                                   "{" + std::to_string(k) + "}]" + vtag);
                    }
                }
                // H modes are even: plain commutator
                for (long r = -W_; r <= W_; ++r) {
                    if (r == 0) continue;
                    HeisenbergMode h{false, j, int(r)};
                    FockVector res = eta(i, apply_heisenberg(mod, h, v));
                    res.axpy(Scalar::integer(-1),
                             apply_heisenberg(mod, h, eta(i, v)));
                    record(rep, res,
                           "[eta_" + std::to_string(i) + ",H_" + std::to_string(j) +
                               "{" + std::to_string(r) + "}]" + vtag);
                }
            }
        }
    }
    rep.ms = t.ms();
    return rep;
}

}  // namespace emn
