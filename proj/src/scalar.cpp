#include "emn/scalar.hpp"

#include <stdexcept>

namespace emn {

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::runtime_error("Scalar: zero denominator");
    reduce();
}

void Scalar::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::one();
        return;
    }
    if (den_.is_one()) return;
    // move the denominator's monomial part into the (Laurent) numerator
    Exp3 md = den_.min_exponents();
    if (md.eu || md.ev || md.ec) {
        std::uint64_t inv = pack_exp(-md.eu, -md.ev, -md.ec);
        num_.mul_mono_inplace(1, inv);
        den_.mul_mono_inplace(1, inv);
    }
    if (den_.is_monomial()) {
        // den is now a nonzero integer constant
        Int dc = den_.leading().second;
        Int g = boost::multiprecision::gcd(num_.content(), dc);
        if (dc < 0) g = -g;
        if (g != 1) {
            num_.divexact_int_inplace(g);
            Int nd = dc / g;
            den_ = Poly::constant(nd);
        }
        return;
    }
    // cheap normalization: sign and shared integer content
    if (den_.leading().second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Int g = boost::multiprecision::gcd(num_.content(), den_.content());
    if (g != 1) {
        num_.divexact_int_inplace(g);
        den_.divexact_int_inplace(g);
    }
    // the expensive polynomial cancellation runs only once the representation
    // grows; exactness never depends on it (zero is the zero numerator)
    if (num_.size() > 256 || den_.size() > 64) reduce_full();
}

// Every nontrivial denominator in the algebra is (up to monomial and integer
// content) a product of q-integer polynomials, hence a product of cyclotomic
// polynomials in u. Cancelling those by cheap trial division avoids almost
// every general polynomial gcd.
const std::vector<Poly>& cyclotomic_dict() {
    static const std::vector<Poly> dict = [] {
        constexpr int kMax = 64;
        std::vector<Poly> phi(kMax + 1);
        for (int n = 1; n <= kMax; ++n) {
            std::vector<Poly::Term> t;
            t.push_back({pack_exp(0, 0, 0), Int(-1)});
            t.push_back({pack_exp(n, 0, 0), Int(1)});
            Poly p = Poly::from_sorted(std::move(t));  // u^n - 1
            for (int d2 = 1; d2 < n; ++d2)
                if (n % d2 == 0) p = Poly::divexact(p, phi[std::size_t(d2)]);
            phi[std::size_t(n)] = std::move(p);
        }
        return std::vector<Poly>(phi.begin() + 1, phi.end());
    }();
    return dict;
}

DenFactors factor_den(const Poly& den) {
    DenFactors f;
    if (den.is_one()) return f;
    thread_local std::map<std::vector<Poly::Term>, DenFactors> memo;
    auto it = memo.find(den.terms());
    if (it != memo.end()) return it->second;
    Poly rest = den;
    f.c = rest.content();
    if (den.leading().second < 0) f.c = -f.c;
    if (f.c != 1) rest.divexact_int_inplace(f.c);
    const auto& dict = cyclotomic_dict();
    for (int k = 1; k <= int(dict.size()); ++k) {
        if (rest.is_one()) break;
        const Poly& phi = dict[std::size_t(k - 1)];
        Poly q;
        while (Poly::try_divexact(rest, phi, q)) {
            ++f.cyclo[k];
            rest = std::move(q);
            if (rest.is_one()) break;
        }
    }
    f.rest = std::move(rest);
    if (memo.size() >= (1u << 18)) memo.clear();
    memo.emplace(den.terms(), f);
    return f;
}

void Scalar::reduce_full() {
    if (num_.is_zero() || den_.is_one()) return;
    // the nontrivial reduction recurs with identical inputs across mode
    // applications; memoize it per thread
    using Key = std::pair<std::vector<Poly::Term>, std::vector<Poly::Term>>;
    thread_local std::map<Key, std::pair<Poly, Poly>> memo;
    Key key{num_.terms(), den_.terms()};
    auto it = memo.find(key);
    if (it != memo.end()) {
        num_ = it->second.first;
        den_ = it->second.second;
        return;
    }
    // shift the (Laurent) numerator to min-exponent zero so trial division
    // works on genuine polynomials; restored below
    Exp3 mn = num_.min_exponents();
    std::uint64_t nshift = pack_exp(-mn.eu, -mn.ev, -mn.ec);
    num_.mul_mono_inplace(1, nshift);
    // cancel dictionary factors of the denominator by trial division
    Poly rest = den_;
    Poly kept = Poly::one();
    for (const Poly& f : cyclotomic_dict()) {
        if (rest.is_monomial()) break;
        Poly qd;
        while (Poly::try_divexact(rest, f, qd)) {
            Poly qn;
            if (Poly::try_divexact(num_, f, qn))
                num_ = std::move(qn);
            else
                kept *= f;
            rest = std::move(qd);
            if (rest.is_monomial()) break;
        }
    }
    // fallback for any non-dictionary residue
    if (!rest.is_monomial()) {
        Poly g = Poly::gcd(num_, rest);
        if (!g.is_one() && !(g.is_monomial() && g.leading().second == 1)) {
            num_ = Poly::divexact(num_, g);
            rest = Poly::divexact(rest, g);
        }
    }
    den_ = kept * rest;
    num_.mul_mono_inplace(1, pack_exp(mn.eu, mn.ev, mn.ec));
    // re-normalize monomial part, sign, and shared integer content
    Exp3 md2 = den_.min_exponents();
    if (md2.eu || md2.ev || md2.ec) {
        std::uint64_t inv = pack_exp(-md2.eu, -md2.ev, -md2.ec);
        num_.mul_mono_inplace(1, inv);
        den_.mul_mono_inplace(1, inv);
    }
    if (den_.leading().second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Int g = boost::multiprecision::gcd(num_.content(), den_.content());
    if (g != 1) {
        num_.divexact_int_inplace(g);
        den_.divexact_int_inplace(g);
    }
    if (memo.size() >= (1u << 20)) memo.clear();
    memo.emplace(std::move(key), std::make_pair(num_, den_));
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Scalar r;
    if (den_ == o.den_) {
        r.num_ = num_ + o.num_;
        r.den_ = den_;
    } else {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
    }
    r.reduce();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return -o;
    Scalar r;
    if (den_ == o.den_) {
        r.num_ = num_ - o.num_;
        r.den_ = den_;
    } else {
        r.num_ = num_ * o.den_ - o.num_ * den_;
        r.den_ = den_ * o.den_;
    }
    r.reduce();
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar();
    Scalar r;
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.reduce();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw std::runtime_error("Scalar: division by zero");
    if (is_zero()) return Scalar();
    Scalar r;
    r.num_ = num_ * o.den_;
    r.den_ = den_ * o.num_;
    r.reduce();
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::runtime_error("Scalar: inverse of zero");
    Scalar r;
    r.num_ = den_;
    r.den_ = num_;
    r.reduce();
    return r;
}

Scalar Scalar::pow(int e) const {
    if (e == 0) return one();
    Scalar base = e < 0 ? inv() : *this;
    int n = e < 0 ? -e : e;
    Scalar r = one();
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

Scalar Scalar::flip_v() const {
    Scalar r;
    r.num_ = num_.flip_v();
    r.den_ = den_.flip_v();
    r.reduce();
    return r;
}

Scalar Scalar::flip_u() const {
    Scalar r;
    r.num_ = num_.flip_u();
    r.den_ = den_.flip_u();
    r.reduce();
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (num_ == o.num_ && den_ == o.den_) return true;
    if (num_.is_zero() || o.num_.is_zero()) return false;
    return num_ * o.den_ == o.num_ * den_;
}

std::string Scalar::str() const {
    Scalar c = *this;
    c.reduce_full();
    if (c.den_.is_one()) return c.num_.str();
    std::string n = c.num_.str();
    std::string d = c.den_.str();
    return "(" + n + ")/(" + d + ")";
}

Poly qint_poly(long k) {
    if (k == 0) return Poly();
    bool neg = k < 0;
    long a = neg ? -k : k;
    std::vector<Poly::Term> t;
    // [a] = sum_{j=0}^{a-1} q^{a-1-2j}, ascending powers of u
    for (long j = a - 1; j >= 0; --j) {
        long e = a - 1 - 2 * j;  // j descending -> exponent ascending
        t.push_back({pack_exp(int(2 * e), 0, 0), Int(neg ? -1 : 1)});
    }
    return Poly::from_sorted(std::move(t));
}

Scalar qint(long k) { return Scalar(qint_poly(k)); }

bool scalar_eq(const Scalar& a, const Scalar& b) {
    // fast path: evaluate at a fixed "random" rational point
    static const Rat u0(7, 3), v0(5, 11), c0(13, 6);
    Rat da = a.den().eval(u0, v0, c0);
    Rat db = b.den().eval(u0, v0, c0);
    if (da != 0 && db != 0) {
        if (a.num().eval(u0, v0, c0) * db != b.num().eval(u0, v0, c0) * da) return false;
    }
    return a == b;  // exact canonical comparison
}

}  // namespace emn
