#ifndef EMN_POLY_HPP
#define EMN_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace emn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exponent triple (u, v, c), packed into one 64-bit key so that unsigned
// comparison of keys equals lexicographic comparison of (eu, ev, ec).
struct Exp3 {
    int eu = 0, ev = 0, ec = 0;
};

constexpr int kExpBias = 1 << 15;
constexpr std::uint64_t kKeyOne =
    (std::uint64_t(kExpBias) << 32) | (std::uint64_t(kExpBias) << 16) | kExpBias;

inline std::uint64_t pack_exp(int eu, int ev, int ec) {
    return (std::uint64_t(std::uint32_t(eu + kExpBias)) << 32) |
           (std::uint64_t(std::uint32_t(ev + kExpBias)) << 16) |
           std::uint64_t(std::uint32_t(ec + kExpBias));
}
inline Exp3 unpack_exp(std::uint64_t k) {
    Exp3 e;
    e.eu = int((k >> 32) & 0xffff) - kExpBias;
    e.ev = int((k >> 16) & 0xffff) - kExpBias;
    e.ec = int(k & 0xffff) - kExpBias;
    return e;
}
// key arithmetic: product of monomials adds exponents fieldwise
inline std::uint64_t key_mul(std::uint64_t a, std::uint64_t b) { return a + b - kKeyOne; }
inline std::uint64_t key_div(std::uint64_t a, std::uint64_t b) { return a - b + kKeyOne; }

// Sparse Laurent polynomial in (u, v, c) with Int coefficients.
// Terms sorted ascending by packed key; no zero coefficients stored.
class Poly {
  public:
    using Term = std::pair<std::uint64_t, Int>;

    Poly() = default;
    static Poly zero() { return Poly(); }
    static Poly one() { return constant(1); }
    static Poly constant(Int c);
    // monomial c * u^eu v^ev c^ec
    static Poly mono(Int c, int eu, int ev, int ec);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // leading term under lex order on (u, v, c)
    const Term& leading() const { return terms_.back(); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    void mul_mono_inplace(const Int& c, std::uint64_t key);
    void mul_int_inplace(const Int& c);
    void divexact_int_inplace(const Int& c);

    // minimum exponent of each variable over all terms (0 if zero poly)
    Exp3 min_exponents() const;
    Exp3 max_exponents() const;

    // integer content (gcd of coefficients), nonnegative; 0 for the zero poly
    Int content() const;

    // substitute v -> v^{-1} (used by sigma-consistency checks)
    Poly flip_v() const;
    // substitute u -> u^{-1}
    Poly flip_u() const;

    // evaluate at rational point (u0, v0, c0); requires all exponents >= 0
    // after shifting by min_exponents (the shift monomial's value multiplies in).
    Rat eval(const Rat& u0, const Rat& v0, const Rat& c0) const;

    std::string str() const;  // human-readable, lex-descending

    // exact division: *this = q * d, returns q; aborts if not divisible
    static Poly divexact(const Poly& a, const Poly& d);
    static bool try_divexact(const Poly& a, const Poly& d, Poly& q);
    static Poly gcd(const Poly& a, const Poly& b);

    // raw access for builders that maintain the invariant themselves
    static Poly from_sorted(std::vector<Term> t) {
        Poly p;
        p.terms_ = std::move(t);
        return p;
    }

  private:
    std::vector<Term> terms_;
};

inline Poly operator*(const Int& c, const Poly& p) {
    Poly r = p;
    r.mul_int_inplace(c);
    return r;
}

}  // namespace emn

#endif
