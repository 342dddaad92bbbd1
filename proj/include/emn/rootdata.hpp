#ifndef EMN_ROOTDATA_HPP
#define EMN_ROOTDATA_HPP

#include <vector>

#include "emn/scalar.hpp"

namespace emn {

// Combinatorial data for gl(m|n): index sets, Cartan matrix A-hat, skew
// matrix M-hat, parity, cocycle epsilon. Nodes live in Z/(m+n).
struct RootDatum {
    int m = 0, n = 0, N = 0;  // N = m + n
    std::vector<std::vector<int>> Ahat;  // N x N, symmetric
    std::vector<std::vector<int>> Mhat;  // N x N, skew

    int mod(int i) const { return ((i % N) + N) % N; }
    int A(int i, int j) const { return Ahat[std::size_t(mod(i))][std::size_t(mod(j))]; }
    int M(int i, int j) const { return Mhat[std::size_t(mod(i))][std::size_t(mod(j))]; }
    int parity(int i) const {
        int k = mod(i);
        return (k == 0 || k == m) ? 1 : 0;
    }
    bool in_Iplus(int i) const { int k = mod(i); return k >= 1 && k <= m - 1; }
    bool in_Iminus(int i) const { int k = mod(i); return k >= m + 1 && k <= N - 1; }
    bool is_c_index(int j) const { int k = mod(j); return k >= m && k <= N - 1; }

    // epsilon cocycle table on I-hat x I-hat
    int epsilon(int i, int j) const;
    // determinant of A (restriction to I x I), exact
    Int detA() const;
    Int detAhat() const;
};

RootDatum build_root_datum(int m, int n);

// Element of Q + (fundamental weight span); all pairings through here.
struct WeightVector {
    int m = 0, n = 0, N = 0;
    std::vector<int> alpha;  // size N; slots 1..N-1 = multiplicities of alpha-bar_i
    std::vector<int> cvec;   // size N; slots m..N-1 = multiplicities of c_j
    std::vector<int> wt;     // size N; slots 1..N-1 = multiplicities of Lambda-bar_i

    WeightVector() = default;
    explicit WeightVector(const RootDatum& rd)
        : m(rd.m), n(rd.n), N(rd.N), alpha(std::size_t(rd.N), 0),
          cvec(std::size_t(rd.N), 0), wt(std::size_t(rd.N), 0) {}

    bool is_zero() const;
    WeightVector operator+(const WeightVector& o) const;
    WeightVector operator-(const WeightVector& o) const;
    WeightVector operator-() const;
    WeightVector scaled(int k) const;
    bool operator==(const WeightVector& o) const {
        return alpha == o.alpha && cvec == o.cvec && wt == o.wt;
    }
};

WeightVector alpha_basis(const RootDatum& rd, int i);       // alpha-bar_i, i in I
WeightVector c_basis(const RootDatum& rd, int j);           // c_j, j in I^- u {m}
WeightVector lambda_bar(const RootDatum& rd, int i);        // Lambda-bar_i, i in I
// Q-tilde generator g_i (i in I): alpha_i for i<m, alpha_m+c_m,
// alpha_j+c_j-c_{j-1} for j>m
WeightVector qtilde_gen(const RootDatum& rd, int i);

long pairing(const RootDatum& rd, const WeightVector& x, const WeightVector& y);
// pairing of alpha-bar_i (i in I-hat; 0 expands as -sum of alpha-bar) with x
long pairing_alpha(const RootDatum& rd, int i, const WeightVector& x);

bool in_qtilde(const RootDatum& rd, const WeightVector& x);

// bimultiplicative extension of epsilon over the root coordinates
int epsilon_form(const RootDatum& rd, const WeightVector& a, const WeightVector& b);
// sign theta(i,j) = eps(i,j)eps(j,i) governing e^{a_i} e^{a_j} exchange
int theta(const RootDatum& rd, int i, int j);
// sign from merging E(beta)E(alpha) into E(beta+alpha) in ordered-product form
int reorder_sign(const RootDatum& rd, const WeightVector& beta, const WeightVector& alpha);

// weight specification: L0, L<i>, or the a-family (1-a)L0 + a.Lm
struct WeightSpec {
    enum Kind { L0, Li, aLm } kind = L0;
    int i = 0;  // for Li
    int a = 0;  // for aLm
};
WeightVector tilde_weight(const RootDatum& rd, const WeightSpec& spec);

struct SymmetryReport {
    bool sigmaA = false, sigmaM = false, tauA = false, tauM = false;
    bool ahat_symmetric = false, mhat_skew = false, rows_sum_zero = false;
    Int detA, detAhat;
    int det_sign = 0;  // observed sign of detA relative to |m-n|
    bool ok() const {
        return sigmaA && sigmaM && tauA && tauM && ahat_symmetric && mhat_skew &&
               rows_sum_zero;
    }
};
SymmetryReport check_diagram_symmetries(int m, int n);

}  // namespace emn

#endif
