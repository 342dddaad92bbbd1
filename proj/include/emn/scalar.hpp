#ifndef EMN_SCALAR_HPP
#define EMN_SCALAR_HPP

#include <string>

#include "emn/poly.hpp"

namespace emn {

// Exact rational function in Q(u, v, c) with q = u^2, d = v^2.
// The representation is lazily reduced: the denominator is kept a genuine
// polynomial with min-exponent 0 per variable, positive leading coefficient
// (lex) and integer content coprime to the numerator's, but the full gcd
// cancellation runs only when the representation grows past a threshold.
// Zero is always exactly the zero numerator; equality cross-multiplies.
class Scalar {
  public:
    Scalar() = default;  // zero
    explicit Scalar(Int k) : num_(Poly::constant(std::move(k))), den_(Poly::one()) {}
    explicit Scalar(const Poly& p) : num_(p), den_(Poly::one()) {}
    Scalar(Poly num, Poly den);  // reduces

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(Int(1)); }
    static Scalar integer(long k) { return Scalar(Int(k)); }
    // monomial u^eu v^ev c^ec
    static Scalar mono(int eu, int ev, int ec) {
        Scalar s;
        s.num_ = Poly::mono(1, eu, ev, ec);
        s.den_ = Poly::one();
        return s;
    }
    static Scalar q(int k = 1) { return mono(2 * k, 0, 0); }
    static Scalar qhalf(int k = 1) { return mono(k, 0, 0); }
    static Scalar d(int k = 1) { return mono(0, 2 * k, 0); }
    static Scalar dhalf(int k = 1) { return mono(0, k, 0); }
    static Scalar cpow(int k = 1) { return mono(0, 0, k); }
    static Scalar q1() { return mono(-2, 2, 0); }  // d q^{-1}
    static Scalar q2() { return mono(4, 0, 0); }   // q^2
    static Scalar q3() { return mono(-2, -2, 0); } // d^{-1} q^{-1}

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return !num_.is_zero() && num_ == den_; }
    bool is_integral() const { return den_.is_one(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // force the full gcd cancellation now (normally deferred)
    void canonicalize() { reduce_full(); }

    Scalar inv() const;
    Scalar pow(int e) const;
    // substitute v -> v^{-1} (i.e. d -> d^{-1})
    Scalar flip_v() const;
    // substitute u -> u^{-1} (i.e. q -> q^{-1})
    Scalar flip_u() const;

    std::string str() const;

  private:
    void reduce();
    void reduce_full();
    Poly num_;              // zero by default
    Poly den_ = Poly::one();
};

// q-integer [k] = (q^k - q^{-k})/(q - q^{-1}), as a Laurent polynomial in q.
Scalar qint(long k);
Poly qint_poly(long k);  // same value, Poly form (den 1)

// Cyclotomic polynomials Phi_1(u) .. Phi_64(u); index k-1 holds Phi_k.
// Every denominator arising in the algebra is, up to integer content, a
// product of these (q-integers factor into cyclotomics in u).
const std::vector<Poly>& cyclotomic_dict();

// Denominator factorization over the dictionary: den = c * prod Phi_k^e * rest.
struct DenFactors {
    Int c{1};
    std::map<int, int> cyclo;  // k -> exponent
    Poly rest = Poly::one();   // non-dictionary residue (usually 1)
};
DenFactors factor_den(const Poly& den);

// Exact equality of rational functions with a random-point fast path:
// a definitive "false" can come from evaluation; "true" always falls
// through to the exact canonical comparison.
bool scalar_eq(const Scalar& a, const Scalar& b);

}  // namespace emn

#endif
