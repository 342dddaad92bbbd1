#include "emn/relations.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

namespace emn {

namespace {

Scalar dpow(int k) { return Scalar::mono(0, 2 * k, 0); }
Scalar qpow(long k) { return Scalar::mono(int(2 * k), 0, 0); }
Scalar q_minus_qinv() { return Scalar::q(1) - Scalar::q(-1); }

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

// K_i^{+-1} (the group-like zero mode)
FockVector apply_K(const FockModule& mod, int i, int sign, const FockVector& v) {
    auto r = apply_zero_mode(mod, ZeroModeKind::qAlpha, sign, i, v);
    if (r.empty()) return FockVector();
    return r.begin()->second;
}

}  // namespace

std::string relation_name(RelationId id) {
    switch (id) {
        case RelationId::CK: return "CK";
        case RelationId::KK1: return "KK1";
        case RelationId::KK2: return "KK2";
        case RelationId::KE: return "KE";
        case RelationId::KF: return "KF";
        case RelationId::EF: return "EF";
        case RelationId::EE0: return "EE0";
        case RelationId::EEquad: return "EEquad";
        case RelationId::FF0: return "FF0";
        case RelationId::FFquad: return "FFquad";
        case RelationId::Serre1: return "Serre1";
        case RelationId::Serre2: return "Serre2";
        case RelationId::Serre3: return "Serre3";
        case RelationId::Serre4: return "Serre4";
        case RelationId::Serre5: return "Serre5";
        case RelationId::Serre6: return "Serre6";
        case RelationId::Serre7: return "Serre7";
        case RelationId::Serre8: return "Serre8";
        case RelationId::HE: return "HE";
        case RelationId::HF: return "HF";
        case RelationId::HH: return "HH";
    }
    return "?";
}

RelationVerifier::RelationVerifier(int m, int n, const WeightSpec& spec, int D, int B,
                                   int W)
    : alg_(make_module(m, n, spec)), D_(D), B_(B), W_(W) {
    vecs_ = test_vectors(alg_.mod(), D, B);
}

bool RelationVerifier::applicable(RelationId id, int i, int j) const {
    const RootDatum& rd = alg_.mod().rd;
    switch (id) {
        case RelationId::EE0:
        case RelationId::FF0:
            return rd.A(i, j) == 0;
        case RelationId::EEquad:
        case RelationId::FFquad:
            return rd.A(i, j) != 0;
        case RelationId::Serre1:
        case RelationId::Serre2:
            return rd.parity(i) == 0 &&
                   (rd.mod(j) == rd.mod(i + 1) || rd.mod(j) == rd.mod(i - 1));
        case RelationId::Serre3:
        case RelationId::Serre4:
            return rd.m * rd.n != 2 && rd.parity(i) == 1;
        case RelationId::Serre5:
        case RelationId::Serre6:
            return rd.m == 2 && rd.n == 1;
        case RelationId::Serre7:
        case RelationId::Serre8:
            return rd.m == 1 && rd.n == 2;
        default:
            return true;
    }
}

void RelationVerifier::record_residual(RelationReport& rep, const FockVector& res,
                                       const std::string& where) {
    if (res.is_zero()) return;
    rep.pass = false;
    ++rep.failures;
    if (rep.first_failure.empty())
        rep.first_failure = where + " residual " + res.str(alg_.mod());
}

RelationVerifier::Expr RelationVerifier::atom(Role role, int index, int var) const {
    auto* self = const_cast<RelationVerifier*>(this);
    const CurrentSpec& c = self->alg_.get(role, index);
    Expr e;
    e.parity = c.parity;
    e.words.push_back(Word{Scalar::one(), {Factor{&c, var, 0}}});
    return e;
}

RelationVerifier::Expr RelationVerifier::bracket(const Expr& a, const Expr& b,
                                                 const Scalar& q, int sign) {
    // [A, B]_q = AB - (-1)^{|A||B|} q BA  (times an overall integer sign)
    Expr r;
    r.parity = (a.parity + b.parity) % 2;
    Scalar sg = Scalar::integer(sign);
    Scalar koszul = Scalar::integer((a.parity * b.parity) % 2 ? -1 : 1);
    for (const Word& wa : a.words)
        for (const Word& wb : b.words) {
            Word ab{sg * wa.co * wb.co, wa.f};
            ab.f.insert(ab.f.end(), wb.f.begin(), wb.f.end());
            r.words.push_back(std::move(ab));
            Word ba{-sg * koszul * q * wb.co * wa.co, wb.f};
            ba.f.insert(ba.f.end(), wa.f.begin(), wa.f.end());
            r.words.push_back(std::move(ba));
        }
    return r;
}

RelationVerifier::Expr RelationVerifier::swap_vars(const Expr& e, int v1, int v2) {
    Expr r = e;
    for (Word& w : r.words)
        for (Factor& f : w.f) {
            if (f.var == v1)
                f.var = v2;
            else if (f.var == v2)
                f.var = v1;
        }
    return r;
}

RelationVerifier::Expr RelationVerifier::sub(Expr a, const Expr& b) {
    for (const Word& w : b.words) {
        Word neg = w;
        neg.co = -neg.co;
        a.words.push_back(std::move(neg));
    }
    return a;
}

RelationVerifier::Expr RelationVerifier::add(Expr a, const Expr& b) {
    a.words.insert(a.words.end(), b.words.begin(), b.words.end());
    return a;
}

// Extracts the coefficient of each monomial prod_v z_v^{-k_v}, |k_v| <= W, of
// the expression applied to every test vector and demands that it vanishes.
// For four or more variables, slice over the first two to bound the residual
// table; per word, suffixes are evaluated once via depth-first recursion.
void RelationVerifier::check_expr(const Expr& e, int nvars, RelationReport& rep) {
    const long lo = -W_, hi = W_;
    const int nslice = nvars >= 4 ? 2 : 0;
    long tuples = 1;
    for (int v = 0; v < nvars; ++v) tuples *= (hi - lo + 1);

    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v0 = FockVector::single(vecs_[vi], Scalar::one());
        std::vector<long> kval(std::size_t(nvars), 0);
        std::vector<long> sk(std::size_t(nslice), lo);
        while (true) {
            for (int s = 0; s < nslice; ++s) kval[std::size_t(s)] = sk[std::size_t(s)];
            std::map<std::vector<long>, LazyAccum> residual;
            for (const Word& w : e.words) {
                auto rec = [&](auto&& self, int idx, const FockVector& v) -> void {
                    if (idx < 0) {
                        std::vector<long> key(kval.begin() + nslice, kval.end());
                        residual[key].axpy(w.co, v);
                        return;
                    }
                    const Factor& f = w.f[std::size_t(idx)];
                    if (f.var < nslice) {
                        FockVector nv =
                            alg_.mode(*f.cur, kval[std::size_t(f.var)] + f.shift, v);
                        if (!nv.is_zero()) self(self, idx - 1, nv);
                    } else {
                        for (long kk = lo; kk <= hi; ++kk) {
                            kval[std::size_t(f.var)] = kk;
                            FockVector nv = alg_.mode(*f.cur, kk + f.shift, v);
                            if (!nv.is_zero()) self(self, idx - 1, nv);
                        }
                    }
                };
                rec(rec, int(w.f.size()) - 1, v0);
            }
            for (const auto& [key, acc] : residual) {
                FockVector res = acc.finish(false);
                if (res.is_zero()) continue;
                std::ostringstream where;
                where << "v#" << vi << " tuple (";
                for (int s = 0; s < nslice; ++s) where << kval[std::size_t(s)] << ",";
                for (std::size_t t = 0; t < key.size(); ++t)
                    where << key[t] << (t + 1 < key.size() ? "," : "");
                where << ")";
                record_residual(rep, res, where.str());
            }
            // advance the slice odometer
            int s = 0;
            for (; s < nslice; ++s) {
                if (++sk[std::size_t(s)] <= hi) break;
                sk[std::size_t(s)] = lo;
            }
            if (nslice == 0 || s == nslice) break;
        }
        rep.checks += tuples;
    }
}

void RelationVerifier::do_CK(int i, int j, RelationReport& rep) {
    const FockModule& mod = alg_.mod();
    const RootDatum& rd = mod.rd;
    const CurrentSpec& E = alg_.get(Role::E, j);
    const CurrentSpec& F = alg_.get(Role::F, j);
    Scalar qA = qpow(rd.A(i, j));
    Scalar qAm = qpow(-rd.A(i, j));
    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v = FockVector::single(vecs_[vi], Scalar::one());
        // K_i K_j = K_j K_i
        FockVector kk1 = apply_K(mod, i, 1, apply_K(mod, j, 1, v));
        FockVector kk2 = apply_K(mod, j, 1, apply_K(mod, i, 1, v));
        ++rep.checks;
        record_residual(rep, kk1 - kk2, "KiKj v#" + std::to_string(vi));
        for (long k = -W_; k <= W_; ++k) {
            FockVector conjE =
                apply_K(mod, i, 1, alg_.mode(E, k, apply_K(mod, i, -1, v)));
            FockVector conjF =
                apply_K(mod, i, 1, alg_.mode(F, k, apply_K(mod, i, -1, v)));
            rep.checks += 2;
            record_residual(rep, conjE - alg_.mode(E, k, v).scaled(qA),
                            "KEK v#" + std::to_string(vi) + " k=" + std::to_string(k));
            record_residual(rep, conjF - alg_.mode(F, k, v).scaled(qAm),
                            "KFK v#" + std::to_string(vi) + " k=" + std::to_string(k));
        }
    }
}

void RelationVerifier::do_KK1(int i, int j, RelationReport& rep) {
    for (int pm : {1, -1}) {
        Role role = pm > 0 ? Role::Kplus : Role::Kminus;
        const CurrentSpec& Ki = alg_.get(role, i);
        const CurrentSpec& Kj = alg_.get(role, j);
        Expr e;
        e.words.push_back(Word{Scalar::one(), {Factor{&Ki, 0, 0}, Factor{&Kj, 1, 0}}});
        e.words.push_back(Word{-Scalar::one(), {Factor{&Kj, 1, 0}, Factor{&Ki, 0, 0}}});
        check_expr(e, 2, rep);
    }
}

void RelationVerifier::do_KK2(int i, int j, RelationReport& rep) {
    const RootDatum& rd = alg_.mod().rd;
    int A = rd.A(i, j), M = rd.M(i, j);
    const CurrentSpec& Km = alg_.get(Role::Kminus, i);
    const CurrentSpec& Kp = alg_.get(Role::Kplus, j);
    // cross-multiplied, C = q:
    // (d^M q^{-1} z - q^A w)(d^M q^{A+1} z - w) K-(z)K+(w)
    //   = (d^M q^{A-1} z - w)(d^M q z - q^A w) K+(w)K-(z)
    Expr e;
    e.words.push_back(
        Word{dpow(2 * M) * qpow(A), {Factor{&Km, 0, 2}, Factor{&Kp, 1, 0}}});
    e.words.push_back(Word{-dpow(M) * (qpow(-1) + qpow(2 * A + 1)),
                           {Factor{&Km, 0, 1}, Factor{&Kp, 1, 1}}});
    e.words.push_back(Word{qpow(A), {Factor{&Km, 0, 0}, Factor{&Kp, 1, 2}}});
    e.words.push_back(
        Word{-dpow(2 * M) * qpow(A), {Factor{&Kp, 1, 0}, Factor{&Km, 0, 2}}});
    e.words.push_back(Word{dpow(M) * (qpow(2 * A - 1) + qpow(1)),
                           {Factor{&Kp, 1, 1}, Factor{&Km, 0, 1}}});
    e.words.push_back(Word{-qpow(A), {Factor{&Kp, 1, 2}, Factor{&Km, 0, 0}}});
    check_expr(e, 2, rep);
}

void RelationVerifier::do_KEKF(RelationId id, int i, int j, RelationReport& rep) {
    const RootDatum& rd = alg_.mod().rd;
    bool isE = id == RelationId::KE;
    int A = isE ? rd.A(i, j) : -rd.A(i, j);
    int M = rd.M(i, j);
    const CurrentSpec& X = alg_.get(isE ? Role::E : Role::F, j);
    for (int pm : {1, -1}) {
        // K^+ gets argument C^{-1}z in KE (C^0 in KF), K^- the reverse
        bool scaled = isE ? (pm > 0) : (pm < 0);
        Role krole = pm > 0 ? Role::Kplus : Role::Kminus;
        const CurrentSpec* K;
        if (scaled) {
            std::string key =
                std::string(pm > 0 ? "Kp" : "Km") + "_qinv_" + std::to_string(rd.mod(i));
            K = &alg_.store(key, scaled_argument(alg_.get(krole, i), Scalar::q(-1)));
        } else {
            K = &alg_.get(krole, i);
        }
        Expr e;
        e.words.push_back(Word{dpow(M), {Factor{K, 0, 1}, Factor{&X, 1, 0}}});
        e.words.push_back(Word{-qpow(A), {Factor{K, 0, 0}, Factor{&X, 1, 1}}});
        e.words.push_back(
            Word{-dpow(M) * qpow(A), {Factor{&X, 1, 0}, Factor{K, 0, 1}}});
        e.words.push_back(Word{Scalar::one(), {Factor{&X, 1, 1}, Factor{K, 0, 0}}});
        check_expr(e, 2, rep);
    }
}

void RelationVerifier::do_EF(int i, int j, RelationReport& rep) {
    const FockModule& mod = alg_.mod();
    const RootDatum& rd = mod.rd;
    const CurrentSpec& E = alg_.get(Role::E, i);
    const CurrentSpec& F = alg_.get(Role::F, j);
    const CurrentSpec& Kp = alg_.get(Role::Kplus, i);
    const CurrentSpec& Km = alg_.get(Role::Kminus, i);
    Scalar koszul = Scalar::integer(rd.parity(i) * rd.parity(j) ? -1 : 1);
    Scalar pref = Scalar::one() / q_minus_qinv();
    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v = FockVector::single(vecs_[vi], Scalar::one());
        for (long a = -W_; a <= W_; ++a)
            for (long b = -W_; b <= W_; ++b) {
                LazyAccum acc;
                acc.axpy(Scalar::one(), alg_.mode(E, a, alg_.mode(F, b, v)));
                acc.axpy(-koszul, alg_.mode(F, b, alg_.mode(E, a, v)));
                if (rd.mod(i) == rd.mod(j)) {
                    // delta(Cw/z)K+(w) - delta(Cz/w)K-(z) at C = q:
                    // coefficient of z^{-a}w^{-b} is q^a K^+_{a+b} - q^b K^-_{a+b}
                    acc.axpy(-pref * qpow(a), alg_.mode(Kp, a + b, v));
                    acc.axpy(pref * qpow(b), alg_.mode(Km, a + b, v));
                }
                ++rep.checks;
                record_residual(rep, acc.finish(false),
                                "v#" + std::to_string(vi) + " (a,b)=(" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
            }
    }
}

void RelationVerifier::do_quad(RelationId id, int i, int j, RelationReport& rep) {
    const RootDatum& rd = alg_.mod().rd;
    bool isE = id == RelationId::EE0 || id == RelationId::EEquad;
    bool zero = id == RelationId::EE0 || id == RelationId::FF0;
    Role role = isE ? Role::E : Role::F;
    const CurrentSpec& X = alg_.get(role, i);
    const CurrentSpec& Y = alg_.get(role, j);
    Scalar sg = Scalar::integer(rd.parity(i) * rd.parity(j) ? -1 : 1);
    Expr e;
    if (zero) {
        e.words.push_back(Word{Scalar::one(), {Factor{&X, 0, 0}, Factor{&Y, 1, 0}}});
        e.words.push_back(Word{-sg, {Factor{&Y, 1, 0}, Factor{&X, 0, 0}}});
    } else {
        int A = isE ? rd.A(i, j) : -rd.A(i, j);
        int M = rd.M(i, j);
        e.words.push_back(Word{dpow(M), {Factor{&X, 0, 1}, Factor{&Y, 1, 0}}});
        e.words.push_back(Word{-qpow(A), {Factor{&X, 0, 0}, Factor{&Y, 1, 1}}});
        e.words.push_back(
            Word{-sg * dpow(M) * qpow(A), {Factor{&Y, 1, 0}, Factor{&X, 0, 1}}});
        e.words.push_back(Word{sg, {Factor{&Y, 1, 1}, Factor{&X, 0, 0}}});
    }
    check_expr(e, 2, rep);
}

void RelationVerifier::do_serre12(RelationId id, int i, int j, RelationReport& rep) {
    Role role = id == RelationId::Serre1 ? Role::E : Role::F;
    Expr inner = bracket(atom(role, i, 1), atom(role, j, 2), Scalar::q(1));
    Expr outer = bracket(atom(role, i, 0), inner, Scalar::q(-1));
    Expr e = add(outer, swap_vars(outer, 0, 1));
    check_expr(e, 3, rep);
}

void RelationVerifier::do_serre34(RelationId id, int i, RelationReport& rep) {
    const RootDatum& rd = alg_.mod().rd;
    Role role = id == RelationId::Serre3 ? Role::E : Role::F;
    int ip = rd.mod(i + 1), im = rd.mod(i - 1);
    Expr inner = bracket(atom(role, i, 1), atom(role, im, 3), Scalar::q(1));
    Expr mid = bracket(atom(role, ip, 2), inner, Scalar::q(-1));
    Expr outer = bracket(atom(role, i, 0), mid, Scalar::one());
    Expr e = add(outer, swap_vars(outer, 0, 1));
    check_expr(e, 4, rep);
}

void RelationVerifier::do_serre5678(RelationId id, RelationReport& rep) {
    const RootDatum& rd = alg_.mod().rd;
    bool isE = id == RelationId::Serre5 || id == RelationId::Serre7;
    Role role = isE ? Role::E : Role::F;
    // nodes (a, b, c): brackets alternate a and b around the lone c factor
    int a = 0, b, c;
    if (rd.m == 2) {
        b = 2;
        c = 1;
    } else {
        b = 1;
        c = 2;
    }
    // vars: 0,1 = the two a-arguments, 2,3 = the two b-arguments, 4 = c
    Scalar one = Scalar::one();
    Expr L = bracket(
        atom(role, a, 0),
        bracket(atom(role, b, 2),
                bracket(atom(role, a, 1),
                        bracket(atom(role, b, 3), atom(role, c, 4), Scalar::q(1)), one),
                one),
        Scalar::q(-1));
    Expr R = bracket(
        atom(role, b, 2),
        bracket(atom(role, a, 0),
                bracket(atom(role, b, 3),
                        bracket(atom(role, a, 1), atom(role, c, 4), Scalar::q(1)), one),
                one),
        Scalar::q(-1));
    auto symsym = [this](const Expr& e) {
        Expr f = add(e, swap_vars(e, 0, 1));
        return add(f, swap_vars(f, 2, 3));
    };
    Expr e = sub(symsym(L), symsym(R));
    check_expr(e, 5, rep);
}

void RelationVerifier::do_H(RelationId id, int i, int j, RelationReport& rep) {
    const FockModule& mod = alg_.mod();
    const RootDatum& rd = mod.rd;
    int A = rd.A(i, j), M = rd.M(i, j);
    if (id == RelationId::HH) {
        for (long r = -W_; r <= W_; ++r)
            for (long s = -W_; s <= W_; ++s) {
                if (r == 0 || s == 0) continue;
                HeisenbergMode hr{false, i, int(r)}, hs{false, j, int(s)};
                // [H_{i,r}, H_{j,s}] = delta_{r+s,0} [rA][r]/r d^{-rM} (C = q)
                Scalar rhs_co;
                if (r + s == 0)
                    rhs_co = qint(r * A) * qint(r) / Scalar::integer(r) * dpow(int(-r * M));
                for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
                    FockVector v = FockVector::single(vecs_[vi], Scalar::one());
                    FockVector lhs =
                        apply_heisenberg(mod, hr, apply_heisenberg(mod, hs, v));
                    lhs += apply_heisenberg(mod, hs, apply_heisenberg(mod, hr, v))
                               .scaled(-Scalar::one());
                    ++rep.checks;
                    record_residual(rep, lhs - v.scaled(rhs_co),
                                    "v#" + std::to_string(vi) + " (r,s)=(" +
                                        std::to_string(r) + "," + std::to_string(s) +
                                        ")");
                }
            }
        return;
    }
    bool isE = id == RelationId::HE;
    const CurrentSpec& X = alg_.get(isE ? Role::E : Role::F, j);
    for (long r = -W_; r <= W_; ++r) {
        if (r == 0) continue;
        // [H_{i,r}, X_{j,k}] = +-[rA]/r d^{-rM} C^{-(r+-|r|)/2} X_{j,k+r}, C = q
        long cexp = isE ? -(r + std::abs(r)) / 2 : -(r - std::abs(r)) / 2;
        Scalar co = qint(r * A) / Scalar::integer(r) * dpow(int(-r * M)) * qpow(cexp);
        if (!isE) co = -co;
        HeisenbergMode hr{false, i, int(r)};
        for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
            FockVector v = FockVector::single(vecs_[vi], Scalar::one());
            for (long k = -W_; k <= W_; ++k) {
                FockVector lhs = apply_heisenberg(mod, hr, alg_.mode(X, k, v));
                lhs += alg_.mode(X, k, apply_heisenberg(mod, hr, v))
                           .scaled(-Scalar::one());
                FockVector rhs = alg_.mode(X, k + r, v).scaled(co);
                ++rep.checks;
                record_residual(rep, lhs - rhs,
                                "v#" + std::to_string(vi) + " (r,k)=(" +
                                    std::to_string(r) + "," + std::to_string(k) + ")");
            }
        }
    }
}

RelationReport RelationVerifier::verify(RelationId id, int i, int j) {
    Timer t;
    RelationReport rep;
    rep.id = relation_name(id);
    rep.i = i;
    rep.j = j;
    if (!applicable(id, i, j)) {
        rep.applicable = false;
        rep.ms = t.ms();
        return rep;
    }
    switch (id) {
        case RelationId::CK: do_CK(i, j, rep); break;
        case RelationId::KK1: do_KK1(i, j, rep); break;
        case RelationId::KK2: do_KK2(i, j, rep); break;
        case RelationId::KE:
        case RelationId::KF: do_KEKF(id, i, j, rep); break;
        case RelationId::EF: do_EF(i, j, rep); break;
        case RelationId::EE0:
        case RelationId::EEquad:
        case RelationId::FF0:
        case RelationId::FFquad: do_quad(id, i, j, rep); break;
        case RelationId::Serre1:
        case RelationId::Serre2: do_serre12(id, i, j, rep); break;
        case RelationId::Serre3:
        case RelationId::Serre4: do_serre34(id, i, rep); break;
        case RelationId::Serre5:
        case RelationId::Serre6:
        case RelationId::Serre7:
        case RelationId::Serre8: do_serre5678(id, rep); break;
        case RelationId::HE:
        case RelationId::HF:
        case RelationId::HH: do_H(id, i, j, rep); break;
    }
    rep.ms = t.ms();
    return rep;
}

std::vector<RelationReport> RelationVerifier::verify_all() {
    const RootDatum& rd = alg_.mod().rd;
    std::vector<RelationReport> out;
    int N = rd.N;
    auto run = [&](RelationId id, int i, int j) {
        if (applicable(id, i, j)) out.push_back(verify(id, i, j));
    };
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            run(RelationId::CK, i, j);
            run(RelationId::KK2, i, j);
            run(RelationId::KE, i, j);
            run(RelationId::KF, i, j);
            run(RelationId::EF, i, j);
            run(RelationId::HE, i, j);
            run(RelationId::HF, i, j);
            run(RelationId::HH, i, j);
            if (j >= i) {
                run(RelationId::KK1, i, j);
                run(RelationId::EE0, i, j);
                run(RelationId::FF0, i, j);
                run(RelationId::EEquad, i, j);
                run(RelationId::FFquad, i, j);
            }
        }
    for (int i = 0; i < N; ++i)
        for (int dj : {1, -1}) {
            int j = rd.mod(i + dj);
            if (N == 2 && dj == -1) continue;
            run(RelationId::Serre1, i, j);
            run(RelationId::Serre2, i, j);
        }
    for (int i : {0, rd.m}) {
        run(RelationId::Serre3, i, -1);
        run(RelationId::Serre4, i, -1);
    }
    run(RelationId::Serre5, -1, -1);
    run(RelationId::Serre6, -1, -1);
    run(RelationId::Serre7, -1, -1);
    run(RelationId::Serre8, -1, -1);
    return out;
}

RelationReport RelationVerifier::verify_level() {
    Timer t;
    RelationReport rep;
    rep.id = "level";
    const FockModule& mod = alg_.mod();
    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v = FockVector::single(vecs_[vi], Scalar::one());
        FockVector w = v;
        for (int i = 0; i < mod.rd.N; ++i) w = apply_K(mod, i, 1, w);
        ++rep.checks;
        record_residual(rep, w - v, "K v#" + std::to_string(vi));
    }
    rep.ms = t.ms();
    return rep;
}

RelationReport RelationVerifier::verify_admissibility() {
    Timer t;
    RelationReport rep;
    rep.id = "admissibility";
    const FockModule& mod = alg_.mod();
    long limit = D_ + W_ + 2;
    for (std::size_t vi = 0; vi < vecs_.size(); ++vi) {
        FockVector v = FockVector::single(vecs_[vi], Scalar::one());
        for (int i = 0; i < mod.rd.N; ++i)
            for (Role role : {Role::E, Role::F}) {
                const CurrentSpec& cur = alg_.get(role, i);
                long bound = mode_upper_bound(mod, cur, v);
                ++rep.checks;
                for (long k = limit + 1; k <= bound; ++k) {
                    FockVector w = alg_.mode(cur, k, v);
                    record_residual(rep, w,
                                    cur.name + " v#" + std::to_string(vi) +
                                        " k=" + std::to_string(k));
                }
            }
    }
    rep.ms = t.ms();
    return rep;
}

}  // namespace emn
