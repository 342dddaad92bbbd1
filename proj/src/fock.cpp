#include "emn/fock.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace emn {

FockVector FockVector::single(FockBasis b, Scalar s) {
    FockVector v;
    if (!s.is_zero()) v.terms_.emplace(std::move(b), std::move(s));
    return v;
}

void FockVector::add_term(const FockBasis& b, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = terms_.find(b);
    if (it == terms_.end()) {
        terms_.emplace(b, s);
    } else {
        it->second += s;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [b, s] : o.terms_) add_term(b, s);
    return *this;
}

FockVector& FockVector::axpy(const Scalar& a, const FockVector& o) {
    if (a.is_zero()) return *this;
    for (const auto& [b, s] : o.terms_) add_term(b, a * s);
    return *this;
}

FockVector FockVector::operator+(const FockVector& o) const {
    FockVector r = *this;
    r += o;
    return r;
}

FockVector FockVector::operator-(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [b, s] : o.terms_) r.add_term(b, -s);
    return r;
}

FockVector FockVector::scaled(const Scalar& a) const {
    FockVector r;
    if (a.is_zero()) return r;
    for (const auto& [b, s] : terms_) {
        Scalar t = a * s;
        if (!t.is_zero()) r.terms_.emplace(b, std::move(t));
    }
    return r;
}

std::string FockVector::str(const FockModule& mod) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, s] : terms_) {
        if (!first) os << "  +  ";
        first = false;
        os << "(" << s.str() << ") * [";
        for (auto m : b.cre) {
            int f = mode_family(m);
            if (f < mod.rd.N)
                os << " H(" << f << "," << -mode_level(m) << ")";
            else
                os << " c(" << (f - mod.rd.N + mod.rd.m) << "," << -mode_level(m) << ")";
        }
        os << " | lat";
        for (auto x : b.lat) os << " " << int(x);
        os << " ]";
    }
    return os.str();
}

WeightVector FockModule::lattice_weight(const FockBasis& b) const {
    WeightVector w(rd);
    for (int i = 1; i < rd.N; ++i) w.alpha[std::size_t(i)] = b.lat[std::size_t(alpha_slot(i))];
    for (int j = rd.m; j < rd.N; ++j) w.cvec[std::size_t(j)] = b.lat[std::size_t(c_slot(j))];
    return w;
}

long FockModule::creation_degree(const FockBasis& b) const {
    long d = 0;
    for (auto m : b.cre) d += mode_level(m);
    return d;
}

FockBasis FockModule::vacuum() const {
    FockBasis b;
    b.lat.assign(std::size_t(lat_size()), 0);
    return b;
}

FockModule make_module(int m, int n, const WeightSpec& spec) {
    FockModule mod;
    mod.rd = build_root_datum(m, n);
    mod.spec = spec;
    mod.Ltilde = tilde_weight(mod.rd, spec);
    return mod;
}

Scalar heis_comm(const RootDatum& rd, const HeisenbergMode& a, const HeisenbergMode& b) {
    if (a.level + b.level != 0) return Scalar::zero();
    int r = a.level;
    if (a.is_c != b.is_c) return Scalar::zero();
    if (a.is_c) {
        if (rd.mod(a.index) != rd.mod(b.index)) return Scalar::zero();
        // [r]^2 / r
        return qint(r) * qint(r) / Scalar::integer(r);
    }
    int A = rd.A(a.index, b.index);
    if (A == 0) return Scalar::zero();
    int M = rd.M(a.index, b.index);
    return qint(long(r) * A) * qint(r) / Scalar::integer(r) * Scalar::d(-r * M);
}

FockVector apply_heisenberg(const FockModule& mod, const HeisenbergMode& mode,
                            const FockVector& v) {
    if (mode.level == 0) throw std::invalid_argument("apply_heisenberg: r = 0");
    FockVector out;
    const RootDatum& rd = mod.rd;
    if (mode.level < 0) {
        int fam = mod.family_of(mode.is_c, mode.index);
        std::uint16_t pm = pack_mode(fam, -mode.level);
        for (const auto& [b, s] : v.terms()) {
            FockBasis nb = b;
            nb.cre.insert(std::upper_bound(nb.cre.begin(), nb.cre.end(), pm), pm);
            out.add_term(nb, s);
        }
        return out;
    }
    // annihilation: contract against each matching creation mode
    int r = mode.level;
    for (const auto& [b, s] : v.terms()) {
        for (std::size_t p = 0; p < b.cre.size(); ++p) {
            if (p > 0 && b.cre[p] == b.cre[p - 1]) continue;  // distinct values once
            std::uint16_t cm = b.cre[p];
            if (mode_level(cm) != r) continue;
            int fam = mode_family(cm);
            HeisenbergMode created;
            created.is_c = fam >= rd.N;
            created.index = created.is_c ? fam - rd.N + rd.m : fam;
            created.level = -r;
            Scalar comm = heis_comm(rd, mode, created);
            if (comm.is_zero()) continue;
            long mult = long(std::count(b.cre.begin(), b.cre.end(), cm));
            FockBasis nb = b;
            nb.cre.erase(nb.cre.begin() + long(p));
            out.add_term(nb, s * comm * Scalar::integer(mult));
        }
    }
    return out;
}

FockVector apply_lattice_ambient(const FockModule& mod, const WeightVector& beta,
                                 const FockVector& v) {
    FockVector out;
    for (const auto& [b, s] : v.terms()) {
        WeightVector alpha = mod.lattice_weight(b);
        int sign = reorder_sign(mod.rd, beta, alpha);
        WeightVector sum = beta + alpha;
        FockBasis nb = b;
        for (int i = 1; i < mod.rd.N; ++i)
            nb.lat[std::size_t(mod.alpha_slot(i))] = std::int8_t(sum.alpha[std::size_t(i)]);
        for (int j = mod.rd.m; j < mod.rd.N; ++j)
            nb.lat[std::size_t(mod.c_slot(j))] = std::int8_t(sum.cvec[std::size_t(j)]);
        out.add_term(nb, sign == 1 ? s : -s);
    }
    return out;
}

FockVector apply_lattice(const FockModule& mod, const WeightVector& beta,
                         const FockVector& v) {
    if (!in_qtilde(mod.rd, beta))
        throw std::invalid_argument("apply_lattice: shift not in Q-tilde");
    return apply_lattice_ambient(mod, beta, v);
}

std::map<long, FockVector> apply_zero_mode(const FockModule& mod, ZeroModeKind kind,
                                           int sign, int index, const FockVector& v) {
    assert(sign == 1 || sign == -1);
    std::map<long, FockVector> out;
    const RootDatum& rd = mod.rd;
    for (const auto& [b, s] : v.terms()) {
        WeightVector alpha = mod.lattice_weight(b);
        WeightVector tot = alpha + mod.Ltilde;
        long zexp = 0;
        Scalar factor = Scalar::one();
        switch (kind) {
            case ZeroModeKind::zH: {
                zexp = sign * pairing_alpha(rd, index, tot);
                long e = 0;  // sum over I of r_l A_{i,l} M_{i,l}
                for (int l = 1; l < rd.N; ++l)
                    e += long(alpha.alpha[std::size_t(l)]) * rd.A(index, l) * rd.M(index, l);
                factor = Scalar::dhalf(int(sign * e));
                break;
            }
            case ZeroModeKind::qAlpha:
                factor = Scalar::q(int(sign * pairing_alpha(rd, index, tot)));
                break;
            case ZeroModeKind::zC: {
                WeightVector cj = c_basis(rd, index);
                zexp = sign * pairing(rd, cj, tot);
                break;
            }
        }
        out[zexp].add_term(b, s * factor);
    }
    return out;
}

std::vector<FockBasis> creation_monomials(const FockModule& mod, int D) {
    std::vector<FockBasis> out;
    FockBasis base = mod.vacuum();
    // families in id order; recursive enumeration of multisets with total
    // level weight <= D
    std::vector<std::uint16_t> stack;
    auto rec = [&](auto&& self, int family, int budget) -> void {
        if (family == mod.n_families()) {
            FockBasis b = base;
            b.cre = stack;
            std::sort(b.cre.begin(), b.cre.end());
            out.push_back(std::move(b));
            return;
        }
        // choose levels for this family: multisets of positive ints with sum <= budget
        auto levels = [&](auto&& lself, int minr, int rem) -> void {
            self(self, family + 1, rem);  // stop adding modes of this family
            for (int r = minr; r <= rem; ++r) {
                stack.push_back(pack_mode(family, r));
                lself(lself, r, rem - r);
                stack.pop_back();
            }
        };
        levels(levels, 1, budget);
    };
    rec(rec, 0, D);
    return out;
}

std::vector<WeightVector> lattice_ball(const FockModule& mod, int B) {
    std::vector<WeightVector> out;
    const RootDatum& rd = mod.rd;
    std::vector<int> t(std::size_t(rd.N), 0);  // slots 1..N-1
    auto rec = [&](auto&& self, int i) -> void {
        if (i == rd.N) {
            WeightVector w(rd);
            for (int l = 1; l < rd.N; ++l)
                if (t[std::size_t(l)] != 0) w = w + qtilde_gen(rd, l).scaled(t[std::size_t(l)]);
            out.push_back(std::move(w));
            return;
        }
        for (int x = -B; x <= B; ++x) {
            t[std::size_t(i)] = x;
            self(self, i + 1);
        }
        t[std::size_t(i)] = 0;
    };
    rec(rec, 1);
    return out;
}

std::vector<FockBasis> test_vectors(const FockModule& mod, int D, int B) {
    std::vector<FockBasis> out;
    auto mons = creation_monomials(mod, D);
    auto ball = lattice_ball(mod, B);
    for (const auto& w : ball)
        for (const auto& mo : mons) {
            FockBasis b = mo;
            for (int i = 1; i < mod.rd.N; ++i)
                b.lat[std::size_t(mod.alpha_slot(i))] = std::int8_t(w.alpha[std::size_t(i)]);
            for (int j = mod.rd.m; j < mod.rd.N; ++j)
                b.lat[std::size_t(mod.c_slot(j))] = std::int8_t(w.cvec[std::size_t(j)]);
            out.push_back(std::move(b));
        }
    return out;
}

}  // namespace emn
