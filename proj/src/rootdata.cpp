#include "emn/rootdata.hpp"

#include <cassert>
#include <stdexcept>

namespace emn {

RootDatum build_root_datum(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("root datum: m, n must be >= 1");
    if (m == n) throw std::invalid_argument("root datum: m = n is excluded");
    RootDatum rd;
    rd.m = m;
    rd.n = n;
    rd.N = m + n;
    int N = rd.N;
    rd.Ahat.assign(std::size_t(N), std::vector<int>(std::size_t(N), 0));
    rd.Mhat.assign(std::size_t(N), std::vector<int>(std::size_t(N), 0));
    for (int i = 0; i < N; ++i) {
        if (i >= 1 && i <= m - 1)
            rd.Ahat[std::size_t(i)][std::size_t(i)] = 2;
        else if (i >= m + 1)
            rd.Ahat[std::size_t(i)][std::size_t(i)] = -2;
        // neighbors: A_{i,i+1} = -1 when the edge sits in rows 1..m, else +1
        int j = (i + 1) % N;
        int val = (i + 1 <= m) ? -1 : 1;
        rd.Ahat[std::size_t(i)][std::size_t(j)] = val;
        rd.Ahat[std::size_t(j)][std::size_t(i)] = val;
    }
    // M_{i-1,i} = -1, M_{i,i-1} = 1 for i in I^+ u {m};
    // M_{j-1,j} = 1, M_{j,j-1} = -1 for j in I^- u {0}; indices mod N
    for (int i = 1; i <= m; ++i) {
        rd.Mhat[std::size_t(i - 1)][std::size_t(i)] = -1;
        rd.Mhat[std::size_t(i)][std::size_t(i - 1)] = 1;
    }
    for (int j = m + 1; j <= N; ++j) {  // j = N plays the role of node 0
        int jj = j % N;
        int jm = j - 1;
        rd.Mhat[std::size_t(jm)][std::size_t(jj)] = 1;
        rd.Mhat[std::size_t(jj)][std::size_t(jm)] = -1;
    }
    return rd;
}

int RootDatum::epsilon(int i, int j) const {
    int a = mod(i), b = mod(j);
    if (a >= 1 && a <= m && b >= 1 && b <= m && a > b)
        return (A(a, b) % 2 == 0) ? 1 : -1;
    if (a == 0 && (b == 1 || b == m)) return (m == 1) ? 1 : -1;  // (-1)^{1+delta_{m,1}}
    return 1;
}

namespace {

Int bareiss_det(std::vector<std::vector<Int>> M) {
    std::size_t n = M.size();
    if (n == 0) return Int(1);
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && M[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(M[k], M[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                assert(t % prev == 0);
                M[i][j] = t / prev;
            }
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

}  // namespace

Int RootDatum::detA() const {
    std::vector<std::vector<Int>> M;
    for (int i = 1; i < N; ++i) {
        std::vector<Int> row;
        for (int j = 1; j < N; ++j) row.push_back(Int(A(i, j)));
        M.push_back(std::move(row));
    }
    return bareiss_det(std::move(M));
}

Int RootDatum::detAhat() const {
    std::vector<std::vector<Int>> M;
    for (int i = 0; i < N; ++i) {
        std::vector<Int> row;
        for (int j = 0; j < N; ++j) row.push_back(Int(A(i, j)));
        M.push_back(std::move(row));
    }
    return bareiss_det(std::move(M));
}

bool WeightVector::is_zero() const {
    for (int x : alpha)
        if (x) return false;
    for (int x : cvec)
        if (x) return false;
    for (int x : wt)
        if (x) return false;
    return true;
}

WeightVector WeightVector::operator+(const WeightVector& o) const {
    assert(N == o.N && m == o.m);
    WeightVector r = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        r.alpha[i] += o.alpha[i];
        r.cvec[i] += o.cvec[i];
        r.wt[i] += o.wt[i];
    }
    return r;
}

WeightVector WeightVector::operator-(const WeightVector& o) const {
    return *this + (-o);
}

WeightVector WeightVector::operator-() const { return scaled(-1); }

WeightVector WeightVector::scaled(int k) const {
    WeightVector r = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        r.alpha[i] *= k;
        r.cvec[i] *= k;
        r.wt[i] *= k;
    }
    return r;
}

WeightVector alpha_basis(const RootDatum& rd, int i) {
    assert(i >= 1 && i < rd.N);
    WeightVector w(rd);
    w.alpha[std::size_t(i)] = 1;
    return w;
}

WeightVector c_basis(const RootDatum& rd, int j) {
    assert(rd.is_c_index(j));
    WeightVector w(rd);
    w.cvec[std::size_t(rd.mod(j))] = 1;
    return w;
}

WeightVector lambda_bar(const RootDatum& rd, int i) {
    assert(i >= 1 && i < rd.N);
    WeightVector w(rd);
    w.wt[std::size_t(i)] = 1;
    return w;
}

WeightVector qtilde_gen(const RootDatum& rd, int i) {
    assert(i >= 1 && i < rd.N);
    WeightVector w = alpha_basis(rd, i);
    if (i == rd.m) {
        w.cvec[std::size_t(i)] += 1;
    } else if (i > rd.m) {
        w.cvec[std::size_t(i)] += 1;
        w.cvec[std::size_t(i - 1)] -= 1;
    }
    return w;
}

long pairing(const RootDatum& rd, const WeightVector& x, const WeightVector& y) {
    if (x.N != rd.N || y.N != rd.N)
        throw std::invalid_argument("pairing: mismatched root datum");
    long s = 0;
    for (int i = 1; i < rd.N; ++i) {
        if (x.alpha[std::size_t(i)] == 0 && x.wt[std::size_t(i)] == 0) {
            // fall through to c part below
        } else {
            for (int j = 1; j < rd.N; ++j)
                s += long(x.alpha[std::size_t(i)]) * y.alpha[std::size_t(j)] * rd.A(i, j);
            s += long(x.alpha[std::size_t(i)]) * y.wt[std::size_t(i)];
            s += long(x.wt[std::size_t(i)]) * y.alpha[std::size_t(i)];
        }
    }
    for (int j = rd.m; j < rd.N; ++j)
        s += long(x.cvec[std::size_t(j)]) * y.cvec[std::size_t(j)];
    return s;
}

long pairing_alpha(const RootDatum& rd, int i, const WeightVector& x) {
    int k = rd.mod(i);
    if (k != 0) return pairing(rd, alpha_basis(rd, k), x);
    // alpha-bar_0 = -sum_{l in I} alpha-bar_l
    long s = 0;
    for (int l = 1; l < rd.N; ++l) s -= pairing(rd, alpha_basis(rd, l), x);
    return s;
}

bool in_qtilde(const RootDatum& rd, const WeightVector& x) {
    for (int i = 1; i < rd.N; ++i)
        if (x.wt[std::size_t(i)] != 0) return false;
    for (int j = rd.m; j < rd.N; ++j) {
        int rj = x.alpha[std::size_t(j)];
        int rj1 = (j + 1 < rd.N) ? x.alpha[std::size_t(j + 1)] : 0;
        if (x.cvec[std::size_t(j)] != rj - rj1) return false;
    }
    return true;
}

int epsilon_form(const RootDatum& rd, const WeightVector& a, const WeightVector& b) {
    long count = 0;
    for (int i = 1; i < rd.N; ++i) {
        if (a.alpha[std::size_t(i)] == 0) continue;
        for (int j = 1; j < rd.N; ++j) {
            if (b.alpha[std::size_t(j)] == 0) continue;
            if (rd.epsilon(i, j) == -1)
                count += long(a.alpha[std::size_t(i)]) * b.alpha[std::size_t(j)];
        }
    }
    return (count % 2 == 0) ? 1 : -1;
}

int theta(const RootDatum& rd, int i, int j) {
    // exchange sign for e^{alpha-bar_i} e^{alpha-bar_j}; c factors commute
    if (i >= 1 && i <= rd.m && j >= 1 && j <= rd.m)
        return (rd.A(i, j) % 2 == 0) ? 1 : -1;
    return 1;
}

int reorder_sign(const RootDatum& rd, const WeightVector& beta, const WeightVector& alpha) {
    // sign of E(beta)E(alpha) = sign * E(beta+alpha) in ordered-product form:
    // each alpha-generator moves left past the beta-generators with larger index
    long count = 0;
    for (int i = 2; i <= rd.m; ++i) {
        if (beta.alpha[std::size_t(i)] == 0) continue;
        for (int j = 1; j < i; ++j) {
            if (alpha.alpha[std::size_t(j)] == 0) continue;
            if (theta(rd, i, j) == -1)
                count += long(beta.alpha[std::size_t(i)]) * alpha.alpha[std::size_t(j)];
        }
    }
    return (count % 2 == 0) ? 1 : -1;
}

WeightVector tilde_weight(const RootDatum& rd, const WeightSpec& spec) {
    WeightVector w(rd);
    switch (spec.kind) {
        case WeightSpec::L0:
            return w;
        case WeightSpec::Li: {
            int i = spec.i;
            if (i <= 0 || i >= rd.N || i == rd.m)
                throw std::invalid_argument("tilde_weight: L_i requires i in I \\ {m}");
            w = lambda_bar(rd, i);
            if (i > rd.m)
                for (int l = i; l < rd.N; ++l) w.cvec[std::size_t(l)] -= 1;
            return w;
        }
        case WeightSpec::aLm: {
            int a = spec.a;
            w = lambda_bar(rd, rd.m).scaled(a);
            for (int l = rd.m; l < rd.N; ++l) w.cvec[std::size_t(l)] -= a;
            return w;
        }
    }
    throw std::logic_error("tilde_weight: bad spec");
}

SymmetryReport check_diagram_symmetries(int m, int n) {
    RootDatum rd = build_root_datum(m, n);
    RootDatum rd2 = build_root_datum(n, m);
    SymmetryReport rep;
    rep.ahat_symmetric = rep.mhat_skew = rep.rows_sum_zero = true;
    rep.sigmaA = rep.sigmaM = rep.tauA = rep.tauM = true;
    for (int i = 0; i < rd.N; ++i) {
        long rs = 0;
        for (int j = 0; j < rd.N; ++j) {
            rs += rd.A(i, j);
            if (rd.A(i, j) != rd.A(j, i)) rep.ahat_symmetric = false;
            if (rd.M(i, j) != -rd.M(j, i)) rep.mhat_skew = false;
            if (rd.A(m - i, m - j) != rd.A(i, j)) rep.sigmaA = false;
            if (rd.M(m - i, m - j) != -rd.M(i, j)) rep.sigmaM = false;
            if (rd2.A(-i, -j) != -rd.A(i, j)) rep.tauA = false;
            if (rd2.M(-i, -j) != rd.M(i, j)) rep.tauM = false;
        }
        if (rs != 0) rep.rows_sum_zero = false;
    }
    rep.detA = rd.detA();
    rep.detAhat = rd.detAhat();
    Int expect = m - n;
    if (rep.detA == expect)
        rep.det_sign = 1;
    else if (rep.detA == -expect)
        rep.det_sign = -1;
    else
        rep.det_sign = 0;  // |det| mismatch; caller treats as failure
    return rep;
}

}  // namespace emn
