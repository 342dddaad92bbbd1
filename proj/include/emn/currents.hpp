#ifndef EMN_CURRENTS_HPP
#define EMN_CURRENTS_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "emn/fock.hpp"

namespace emn {

// A current is a finite sum of branches; each branch is an ordered product
// of factor atoms with a Scalar prefactor and explicit z^k prefactors.
// Atoms are listed left to right; operators act right to left.

enum class AtomKind { ExpCre, ExpAnn, Lattice, ZeroMode };
enum class HalfNorm { InvQint, QmQinv };  // mode coefficient 1/[r] or (q - q^{-1})

struct Atom {
    AtomKind kind;
    int var = 0;  // expansion variable this factor depends on

    // ExpCre: exp(sum_{r>0} eps * norm(r) * scale^{+r} x_{f,-r} z^{+r})
    // ExpAnn: exp(sum_{r>0} eps * norm(r) * scale^{-r} x_{f,+r} z^{-r})
    bool is_c = false;
    int index = 0;
    int eps = 1;
    HalfNorm norm = HalfNorm::InvQint;
    Scalar scale;  // invertible monomial

    // Lattice: multiplication by e^{beta} (ambient, cocycle sign)
    WeightVector beta;

    // ZeroMode: (s z)^{sign*H_{i,0}} / q^{sign*alpha_{i,0}} / (s z)^{sign*c_{j,0}}
    ZeroModeKind zm = ZeroModeKind::qAlpha;
    int zsign = 1;
};

Atom make_exp(AtomKind kind, bool is_c, int index, int eps, HalfNorm norm, Scalar scale,
              int var = 0);
Atom make_lattice(WeightVector beta, int var = 0);
Atom make_zero_mode(ZeroModeKind zm, int zsign, int index, Scalar scale, int var = 0);

struct Branch {
    Scalar pre;
    std::vector<std::pair<int, long>> zpow;  // (var, exponent) prefactors
    std::vector<Atom> atoms;
};

struct CurrentSpec {
    std::string name;
    std::vector<Branch> branches;
    int parity = 0;
    int id = -1;  // cache key, assigned by CurrentAlgebra
};

// primitive currents
CurrentSpec gamma_current(const FockModule& mod, int pm, int i);  // Gamma^{pm}_i(z)
CurrentSpec c_current(const FockModule& mod, int pm, int j, const Scalar& scale);

enum class Role { E, F, Kplus, Kminus };

// level-(1,0) generator currents (E_i, F_i assembled from Gamma/C factors,
// K_i^{pm} from the generating-series definition)
CurrentSpec assemble_current(const FockModule& mod, Role role, int index);

// multiply every occurrence of the expansion variable by the monomial s
CurrentSpec scaled_argument(const CurrentSpec& cur, const Scalar& s);
// q-difference derivative: (f(qz) - f(q^{-1}z)) / ((q - q^{-1}) z)
CurrentSpec q_derivative(const CurrentSpec& cur);
// product of two branches' atom lists reordered to normal form, x in var 0,
// y in var 1 (single-branch inputs)
CurrentSpec normal_ordered_product(const CurrentSpec& x, const CurrentSpec& y);

// exact coefficient of prod_v z_v^{-targets[v]} applied to v
FockVector apply_modes(const FockModule& mod, const CurrentSpec& cur,
                       const std::vector<long>& targets, const FockVector& v);
FockVector apply_mode(const FockModule& mod, const CurrentSpec& cur, long k,
                      const FockVector& v);

// largest k with the coefficient of z_var^{-k} possibly nonzero on the given vector
long mode_upper_bound(const FockModule& mod, const CurrentSpec& cur, const FockVector& v,
                      int var = 0);

// Contractions <X(z)Y(w)> of the primitive currents, |z| >> |w|.
struct ClosedForm {
    Scalar pre;                                   // includes the displayed epsilon sign
    std::vector<std::pair<Scalar, int>> factors;  // product of (z - s w)^{e}
};

struct PrimitiveId {
    enum Kind { GammaP, GammaM, Cp, Cm } kind;
    int index;
};

ClosedForm contraction(const FockModule& mod, PrimitiveId x, PrimitiveId y);

struct ContractionReport {
    bool zexp_ok = false;      // z-exponent of the crossing matches sum of factor exps
    bool const_ok = false;     // constant (d-power) part matches, epsilon gauge removed
    bool series_ok = false;    // log-Taylor coefficients match through order R
    bool exchange_ok = false;  // eps(i,j)/eps(j,i) equals the lattice cocycle ratio
    int order = 0;
    bool ok() const { return zexp_ok && const_ok && series_ok && exchange_ok; }
};

ContractionReport verify_contraction(const FockModule& mod, PrimitiveId x, PrimitiveId y,
                                     int R);

// scalar crossing of two single-branch currents (x var 0 "z", y var 1 "w"):
// X(z)Y(w) = pre * z^{zexp} * exp(sum_r logco[r-1] (w/z)^r) : X(z)Y(w) :
struct Crossing {
    Scalar pre;
    long zexp = 0;
    std::vector<Scalar> logco;
};
Crossing crossing_first_principles(const FockModule& mod, const CurrentSpec& x,
                                   const CurrentSpec& y, int R);

// Accumulator for linear combinations of FockVectors that defers canonical
// reduction: contributions are kept as unreduced numerators grouped per basis
// and per denominator, and each group is reduced once in finish().
class LazyAccum {
  public:
    void axpy(const Scalar& a, const FockVector& v);
    // canonical=false skips the final gcd reduction; exact zero detection is
    // unaffected (cancellation happens in the polynomial numerators)
    FockVector finish(bool canonical = true) const;

  private:
    std::map<FockBasis, std::map<std::vector<Poly::Term>, Poly>> acc_;
};

// current store with a (current, mode, basis vector) result cache
class CurrentAlgebra {
  public:
    explicit CurrentAlgebra(FockModule m) : mod_(std::move(m)) {}

    const FockModule& mod() const { return mod_; }
    const CurrentSpec& get(Role role, int index);
    // register a derived current under a name so its modes are cached
    const CurrentSpec& store(const std::string& key, const CurrentSpec& spec);

    FockVector mode(const CurrentSpec& cur, long k, const FockVector& v);
    FockVector mode_basis(const CurrentSpec& cur, long k, const FockBasis& b);

    std::size_t cache_size() const { return cache_.size(); }

  private:
    FockModule mod_;
    std::map<std::pair<int, int>, CurrentSpec> stored_;  // (role, index)
    std::map<std::string, CurrentSpec> named_;
    int next_id_ = 0;
    std::map<std::tuple<int, long, FockBasis>, FockVector> cache_;
};

}  // namespace emn

#endif
