#ifndef EMN_FOCK_HPP
#define EMN_FOCK_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emn/rootdata.hpp"
#include "emn/scalar.hpp"

namespace emn {

// Oscillator families: H_i for i in I-hat get ids 0..N-1; c_j for
// j in I^- u {m} get ids N + (j - m). A creation mode of family f at level
// -r (r > 0) is packed as f * 64 + r.
constexpr int kLevelCap = 64;

struct HeisenbergMode {
    bool is_c = false;
    int index = 0;  // node i (H) or j (c)
    int level = 0;  // r != 0
};

inline std::uint16_t pack_mode(int family, int r_abs) {
    return std::uint16_t(family * kLevelCap + r_abs);
}
inline int mode_family(std::uint16_t m) { return m / kLevelCap; }
inline int mode_level(std::uint16_t m) { return m % kLevelCap; }

// Basis monomial: sorted creation-mode multiset tensor lattice point in Q
// (alpha coordinates for i in I, then c coordinates for j in I^- u {m}).
struct FockBasis {
    std::vector<std::uint16_t> cre;  // ascending
    std::vector<std::int8_t> lat;    // size (N-1) + n

    bool operator==(const FockBasis& o) const { return cre == o.cre && lat == o.lat; }
    bool operator<(const FockBasis& o) const {
        if (lat != o.lat) return lat < o.lat;
        return cre < o.cre;
    }
};

class FockVector {
  public:
    using Map = std::map<FockBasis, Scalar>;

    FockVector() = default;
    static FockVector single(FockBasis b, Scalar s);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }

    void add_term(const FockBasis& b, const Scalar& s);
    FockVector& operator+=(const FockVector& o);
    FockVector& axpy(const Scalar& a, const FockVector& o);  // *this += a * o
    FockVector operator+(const FockVector& o) const;
    FockVector operator-(const FockVector& o) const;
    FockVector scaled(const Scalar& a) const;
    bool operator==(const FockVector& o) const { return terms_ == o.terms_; }

    std::string str(const struct FockModule& mod) const;

  private:
    Map terms_;
};

// Module context F_Lambda for a fixed (m,n) and weight.
struct FockModule {
    RootDatum rd;
    WeightSpec spec;
    WeightVector Ltilde;

    int n_families() const { return rd.N + rd.n; }
    int family_of(bool is_c, int index) const {
        return is_c ? rd.N + (rd.mod(index) - rd.m) : rd.mod(index);
    }
    // lattice slot layout: [0 .. N-2] = alpha_1..alpha_{N-1},
    // [N-1 .. N-1+n-1] = c_m..c_{N-1}
    int lat_size() const { return (rd.N - 1) + rd.n; }
    int alpha_slot(int i) const { return i - 1; }
    int c_slot(int j) const { return (rd.N - 1) + (rd.mod(j) - rd.m); }

    WeightVector lattice_weight(const FockBasis& b) const;  // the Q point alpha
    int basis_parity(const FockBasis& b) const {
        int rm = b.lat[std::size_t(alpha_slot(rd.m))];
        return ((rm % 2) + 2) % 2;
    }
    long creation_degree(const FockBasis& b) const;
    FockBasis vacuum() const;
};

FockModule make_module(int m, int n, const WeightSpec& spec);

// Heisenberg commutator value [x_{i,r}, y_{j,-r}] for r > 0 (as Scalar):
// H-H: [rA_{ij}][r]/r d^{-rM_{ij}}; c-c: delta_{ij} [r]^2/r; mixed: 0.
Scalar heis_comm(const RootDatum& rd, const HeisenbergMode& a, const HeisenbergMode& b);

// action of a single nonzero mode; r < 0 creates, r > 0 annihilates
FockVector apply_heisenberg(const FockModule& mod, const HeisenbergMode& mode,
                            const FockVector& v);

// shift by e^beta, beta in Q-tilde, with ordered-product cocycle sign
FockVector apply_lattice(const FockModule& mod, const WeightVector& beta,
                         const FockVector& v);
// same action on the ambient space F (x) C{Q}e^{Ltilde}, any beta in Q
// (individual current factors, e.g. e^{alpha-bar_m} or e^{c_j}, live here)
FockVector apply_lattice_ambient(const FockModule& mod, const WeightVector& beta,
                                 const FockVector& v);

enum class ZeroModeKind { zH, qAlpha, zC };

// result: map from z-exponent to component (zH and zC change the exponent)
std::map<long, FockVector> apply_zero_mode(const FockModule& mod, ZeroModeKind kind,
                                           int sign, int index, const FockVector& v);

// test-vector plans
std::vector<FockBasis> creation_monomials(const FockModule& mod, int D);
std::vector<WeightVector> lattice_ball(const FockModule& mod, int B);
std::vector<FockBasis> test_vectors(const FockModule& mod, int D, int B);

}  // namespace emn

#endif
