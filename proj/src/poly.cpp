#include "emn/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace emn {

Poly Poly::constant(Int c) {
    Poly p;
    if (c != 0) p.terms_.push_back({kKeyOne, std::move(c)});
    return p;
}

Poly Poly::mono(Int c, int eu, int ev, int ec) {
    Poly p;
    if (c != 0) p.terms_.push_back({pack_exp(eu, ev, ec), std::move(c)});
    return p;
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_[0].first == kKeyOne && terms_[0].second == 1;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == kKeyOne);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), ae = terms_.end();
    auto b = o.terms_.begin(), be = o.terms_.end();
    while (a != ae && b != be) {
        if (a->first < b->first) {
            r.terms_.push_back(*a++);
        } else if (b->first < a->first) {
            r.terms_.push_back(*b++);
        } else {
            Int c = a->second + b->second;
            if (c != 0) r.terms_.push_back({a->first, std::move(c)});
            ++a;
            ++b;
        }
    }
    r.terms_.insert(r.terms_.end(), a, ae);
    r.terms_.insert(r.terms_.end(), b, be);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), ae = terms_.end();
    auto b = o.terms_.begin(), be = o.terms_.end();
    while (a != ae && b != be) {
        if (a->first < b->first) {
            r.terms_.push_back(*a++);
        } else if (b->first < a->first) {
            r.terms_.push_back({b->first, -b->second});
            ++b;
        } else {
            Int c = a->second - b->second;
            if (c != 0) r.terms_.push_back({a->first, std::move(c)});
            ++a;
            ++b;
        }
    }
    r.terms_.insert(r.terms_.end(), a, ae);
    for (; b != be; ++b) r.terms_.push_back({b->first, -b->second});
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    if (o.is_monomial()) {
        Poly r = *this;
        r.mul_mono_inplace(o.terms_[0].second, o.terms_[0].first);
        return r;
    }
    if (is_monomial()) {
        Poly r = o;
        r.mul_mono_inplace(terms_[0].second, terms_[0].first);
        return r;
    }
    // general sparse product via ordered map accumulation
    std::map<std::uint64_t, Int> acc;
    for (const auto& ta : terms_)
        for (const auto& tb : o.terms_) {
            Int& slot = acc[key_mul(ta.first, tb.first)];
            slot += ta.second * tb.second;
        }
    Poly r;
    r.terms_.reserve(acc.size());
    for (auto& kv : acc)
        if (kv.second != 0) r.terms_.push_back({kv.first, std::move(kv.second)});
    return r;
}

void Poly::mul_mono_inplace(const Int& c, std::uint64_t key) {
    if (c == 0) {
        terms_.clear();
        return;
    }
    for (auto& t : terms_) {
        t.first = key_mul(t.first, key);
        if (c != 1) t.second *= c;
    }
}

void Poly::mul_int_inplace(const Int& c) {
    if (c == 0) {
        terms_.clear();
        return;
    }
    if (c == 1) return;
    for (auto& t : terms_) t.second *= c;
}

void Poly::divexact_int_inplace(const Int& c) {
    assert(c != 0);
    if (c == 1) return;
    for (auto& t : terms_) {
        assert(t.second % c == 0);
        t.second /= c;
    }
}

Exp3 Poly::min_exponents() const {
    Exp3 m;
    bool first = true;
    for (const auto& t : terms_) {
        Exp3 e = unpack_exp(t.first);
        if (first) {
            m = e;
            first = false;
        } else {
            m.eu = std::min(m.eu, e.eu);
            m.ev = std::min(m.ev, e.ev);
            m.ec = std::min(m.ec, e.ec);
        }
    }
    return m;
}

Exp3 Poly::max_exponents() const {
    Exp3 m;
    bool first = true;
    for (const auto& t : terms_) {
        Exp3 e = unpack_exp(t.first);
        if (first) {
            m = e;
            first = false;
        } else {
            m.eu = std::max(m.eu, e.eu);
            m.ev = std::max(m.ev, e.ev);
            m.ec = std::max(m.ec, e.ec);
        }
    }
    return m;
}

Int Poly::content() const {
    Int g = 0;
    for (const auto& t : terms_) {
        g = boost::multiprecision::gcd(g, t.second);
        if (g == 1) break;
    }
    return g;
}

Poly Poly::flip_v() const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) {
        Exp3 e = unpack_exp(x.first);
        t.push_back({pack_exp(e.eu, -e.ev, e.ec), x.second});
    }
    std::sort(t.begin(), t.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    return from_sorted(std::move(t));
}

Poly Poly::flip_u() const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) {
        Exp3 e = unpack_exp(x.first);
        t.push_back({pack_exp(-e.eu, e.ev, e.ec), x.second});
    }
    std::sort(t.begin(), t.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    return from_sorted(std::move(t));
}

static Rat rpow(const Rat& x, int e) {
    if (e == 0) return Rat(1);
    Rat base = x;
    int n = e;
    if (n < 0) {
        base = Rat(1) / base;
        n = -n;
    }
    Rat r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

Rat Poly::eval(const Rat& u0, const Rat& v0, const Rat& c0) const {
    Rat s(0);
    for (const auto& t : terms_) {
        Exp3 e = unpack_exp(t.first);
        s += Rat(t.second) * rpow(u0, e.eu) * rpow(v0, e.ev) * rpow(c0, e.ec);
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Exp3 e = unpack_exp(it->first);
        Int c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            if (c < 0) {
                os << " - ";
                c = -c;
            } else {
                os << " + ";
            }
        }
        bool hasvar = e.eu || e.ev || e.ec;
        if (c != 1 || !hasvar) os << c;
        bool sep = (c != 1 || !hasvar);
        auto var = [&](const char* name, int exp) {
            if (!exp) return;
            if (sep) os << "*";
            os << name;
            if (exp != 1) os << "^" << exp;
            sep = true;
        };
        var("u", e.eu);
        var("v", e.ev);
        var("c", e.ec);
    }
    return os.str();
}

// ---- division ----

bool Poly::try_divexact(const Poly& a, const Poly& d, Poly& q) {
    if (d.is_zero()) return false;
    if (a.is_zero()) {
        q = Poly();
        return true;
    }
    if (d.is_monomial()) {
        const Int& dc = d.terms_[0].second;
        std::uint64_t dk = d.terms_[0].first;
        std::vector<Term> t;
        t.reserve(a.terms_.size());
        for (const auto& x : a.terms_) {
            if (x.second % dc != 0) return false;
            t.push_back({key_div(x.first, dk), x.second / dc});
        }
        q = from_sorted(std::move(t));
        return true;
    }
    // sparse long division by leading (lex-max) term; works for Laurent
    // monomials since they are invertible, so only coefficient divisibility
    // and eventual termination (guaranteed for exact quotients) matter.
    Poly rem = a;
    std::vector<Term> qt;
    const Term& dl = d.leading();
    // any exact quotient monomial satisfies exp >= min(a) - min(d) per
    // variable; falling below proves non-divisibility and bounds the work
    Exp3 amin = a.min_exponents();
    Exp3 dmin = d.min_exponents();
    std::uint64_t qlow = pack_exp(amin.eu - dmin.eu, amin.ev - dmin.ev, amin.ec - dmin.ec);
    Exp3 qle = unpack_exp(qlow);
    std::size_t guard = 16u * (a.size() + 2) * (d.size() + 2) + 4096;
    while (!rem.is_zero()) {
        if (guard-- == 0) return false;
        const Term& rl = rem.leading();
        if (rl.second % dl.second != 0) return false;
        Int qc = rl.second / dl.second;
        std::uint64_t qk = key_div(rl.first, dl.first);
        Exp3 qe = unpack_exp(qk);
        if (qe.eu < qle.eu || qe.ev < qle.ev || qe.ec < qle.ec) return false;
        qt.push_back({qk, qc});
        Poly sub = d;
        sub.mul_mono_inplace(qc, qk);
        rem -= sub;
    }
    std::sort(qt.begin(), qt.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    q = from_sorted(std::move(qt));
    return true;
}

Poly Poly::divexact(const Poly& a, const Poly& d) {
    Poly q;
    if (!try_divexact(a, d, q)) throw std::runtime_error("Poly::divexact: not divisible");
    return q;
}

// ---- gcd ----

namespace {

int var_degree(const Poly& p, int var) {
    int deg = 0;
    for (const auto& t : p.terms()) {
        Exp3 e = unpack_exp(t.first);
        int d = var == 0 ? e.eu : var == 1 ? e.ev : e.ec;
        deg = std::max(deg, d);
    }
    return deg;
}

// p as dense vector of coefficients in variable `var` (exponents assumed >= 0)
std::vector<Poly> to_rec(const Poly& p, int var) {
    std::vector<Poly> c(std::size_t(var_degree(p, var)) + 1);
    std::vector<std::vector<Poly::Term>> buckets(c.size());
    for (const auto& t : p.terms()) {
        Exp3 e = unpack_exp(t.first);
        int d;
        Exp3 rest = e;
        if (var == 0) {
            d = e.eu;
            rest.eu = 0;
        } else if (var == 1) {
            d = e.ev;
            rest.ev = 0;
        } else {
            d = e.ec;
            rest.ec = 0;
        }
        buckets[std::size_t(d)].push_back({pack_exp(rest.eu, rest.ev, rest.ec), t.second});
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::sort(buckets[i].begin(), buckets[i].end(),
                  [](const Poly::Term& a, const Poly::Term& b) { return a.first < b.first; });
        c[i] = Poly::from_sorted(std::move(buckets[i]));
    }
    return c;
}

Poly from_rec(const std::vector<Poly>& c, int var) {
    std::vector<Poly::Term> out;
    for (std::size_t d = 0; d < c.size(); ++d) {
        std::uint64_t shift =
            var == 0 ? pack_exp(int(d), 0, 0) : var == 1 ? pack_exp(0, int(d), 0) : pack_exp(0, 0, int(d));
        for (const auto& t : c[d].terms()) out.push_back({key_mul(t.first, shift), t.second});
    }
    std::sort(out.begin(), out.end(),
              [](const Poly::Term& a, const Poly::Term& b) { return a.first < b.first; });
    return Poly::from_sorted(std::move(out));
}

int rec_deg(const std::vector<Poly>& c) {
    for (int d = int(c.size()) - 1; d >= 0; --d)
        if (!c[std::size_t(d)].is_zero()) return d;
    return -1;
}

// content of a recursive poly: gcd of its coefficients (recursive)
Poly rec_content(const std::vector<Poly>& c) {
    Poly g;
    for (const auto& p : c) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? p : Poly::gcd(g, p);
        if (g.is_one()) break;
    }
    return g;
}

void rec_divexact(std::vector<Poly>& c, const Poly& d) {
    if (d.is_one()) return;
    for (auto& p : c)
        if (!p.is_zero()) p = Poly::divexact(p, d);
}

// pseudo-remainder of a by b in variable var; a, b primitive recursive polys
std::vector<Poly> rec_prem(std::vector<Poly> a, const std::vector<Poly>& b) {
    int db = rec_deg(b);
    const Poly& lb = b[std::size_t(db)];
    int da = rec_deg(a);
    while (da >= db) {
        const Poly la = a[std::size_t(da)];
        // a = lb * a - la * x^{da-db} * b
        for (auto& p : a)
            if (!p.is_zero()) p *= lb;
        int shift = da - db;
        for (int i = 0; i <= db; ++i) {
            if (b[std::size_t(i)].is_zero()) continue;
            a[std::size_t(i + shift)] -= la * b[std::size_t(i)];
        }
        int nda = rec_deg(a);
        assert(nda < da);
        da = nda;
    }
    a.resize(std::size_t(std::max(da, 0)) + 1);
    if (da < 0) a.assign(1, Poly());
    return a;
}

Poly normalize_sign(Poly g) {
    if (!g.is_zero() && g.leading().second < 0) g = -g;
    return g;
}

// ---- modular degree bound machinery ----
// Substituting integers for all variables but one maps any common divisor to a
// common divisor of the images; as long as the leading coefficients (viewed as
// polynomials in the main variable) do not vanish at the substitution point,
// deg_x(gcd(a,b)) <= deg(gcd(images)). A bound of 0 in every shared variable
// certifies a constant gcd and lets us skip the expensive PRS entirely.

using UniPoly = std::vector<Int>;  // dense, by degree

int uni_deg(const UniPoly& p) {
    for (int d = int(p.size()) - 1; d >= 0; --d)
        if (p[std::size_t(d)] != 0) return d;
    return -1;
}

void uni_strip_content(UniPoly& p) {
    Int g = 0;
    for (const auto& c : p) {
        g = boost::multiprecision::gcd(g, c);
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& c : p) c /= g;
}

UniPoly uni_prem(UniPoly a, const UniPoly& b) {
    int db = uni_deg(b);
    int da = uni_deg(a);
    const Int& lb = b[std::size_t(db)];
    while (da >= db) {
        Int la = a[std::size_t(da)];
        for (auto& c : a) c *= lb;
        int shift = da - db;
        for (int i = 0; i <= db; ++i) a[std::size_t(i + shift)] -= la * b[std::size_t(i)];
        da = uni_deg(a);
    }
    a.resize(std::size_t(std::max(da, 0)) + 1);
    if (da < 0) a.assign(1, Int(0));
    return a;
}

int uni_gcd_degree(UniPoly a, UniPoly b) {
    uni_strip_content(a);
    uni_strip_content(b);
    if (uni_deg(a) < uni_deg(b)) std::swap(a, b);
    while (uni_deg(b) >= 0) {
        UniPoly r = uni_prem(a, b);
        uni_strip_content(r);
        a = std::move(b);
        b = std::move(r);
        if (uni_deg(b) < 0) break;
    }
    return uni_deg(a);
}

Int int_pow(long base, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// image of p under substituting x{other1} = p1, x{other2} = p2, keeping `var`
UniPoly uni_image(const Poly& p, int var, long p1, long p2) {
    UniPoly out(std::size_t(var_degree(p, var)) + 1, Int(0));
    for (const auto& t : p.terms()) {
        Exp3 e = unpack_exp(t.first);
        int exps[3] = {e.eu, e.ev, e.ec};
        Int val = t.second;
        int oi = 0;
        long pts[2] = {p1, p2};
        for (int x = 0; x < 3; ++x) {
            if (x == var) continue;
            val *= int_pow(pts[oi], exps[x]);
            ++oi;
        }
        out[std::size_t(exps[var])] += val;
    }
    return out;
}

// ---- heuristic gcd (integer evaluation / xi-adic reconstruction) ----

Int max_norm(const Poly& p) {
    Int m = 0;
    for (const auto& t : p.terms())
        if (abs(t.second) > m) m = abs(t.second);
    return m;
}

// substitute var = xi (exponents assumed >= 0), collapsing onto remaining vars
Poly eval_var(const Poly& p, int var, const Int& xi) {
    std::map<std::uint64_t, Int> acc;
    std::vector<Int> pows = {Int(1)};
    for (const auto& t : p.terms()) {
        Exp3 e = unpack_exp(t.first);
        int d = var == 0 ? e.eu : var == 1 ? e.ev : e.ec;
        while (int(pows.size()) <= d) pows.push_back(pows.back() * xi);
        Exp3 rest = e;
        (var == 0 ? rest.eu : var == 1 ? rest.ev : rest.ec) = 0;
        acc[pack_exp(rest.eu, rest.ev, rest.ec)] += t.second * pows[std::size_t(d)];
    }
    std::vector<Poly::Term> out;
    for (auto& kv : acc)
        if (kv.second != 0) out.push_back({kv.first, std::move(kv.second)});
    return Poly::from_sorted(std::move(out));
}

// inverse of eval_var: balanced base-xi digits become coefficients of var^i
Poly reconstruct_var(Poly g, int var, const Int& xi) {
    std::vector<Poly::Term> out;
    Int half = xi / 2;
    int i = 0;
    while (!g.is_zero()) {
        std::vector<Poly::Term> digit, rest;
        for (const auto& t : g.terms()) {
            Int r = t.second % xi;
            if (r < 0) r += xi;
            if (r > half) r -= xi;
            if (r != 0) {
                Exp3 e = unpack_exp(t.first);
                (var == 0 ? e.eu : var == 1 ? e.ev : e.ec) = i;
                digit.push_back({pack_exp(e.eu, e.ev, e.ec), r});
            }
            Int rem = (t.second - r) / xi;
            if (rem != 0) rest.push_back({t.first, std::move(rem)});
        }
        out.insert(out.end(), digit.begin(), digit.end());
        g = Poly::from_sorted(std::move(rest));
        ++i;
        if (i > 512) return Poly();  // runaway; caller treats as failure
    }
    std::sort(out.begin(), out.end(),
              [](const Poly::Term& a, const Poly::Term& b) { return a.first < b.first; });
    return Poly::from_sorted(std::move(out));
}

// heuristic gcd of integer-content-free polynomials; empty optional = give up
bool heugcd(const Poly& a0, const Poly& b0, Poly& out, int depth = 0) {
    if (depth > 8) return false;
    Poly a = a0, b = b0;
    Int ca = a.content(), cb = b.content();
    Int icg = boost::multiprecision::gcd(ca, cb);
    if (ca != 0 && ca != 1) a.divexact_int_inplace(ca);
    if (cb != 0 && cb != 1) b.divexact_int_inplace(cb);
    if (a.is_constant() || b.is_constant()) {
        out = Poly::constant(icg);
        return true;
    }
    int var = -1;
    for (int x = 0; x < 3; ++x)
        if (var_degree(a, x) > 0 && var_degree(b, x) > 0) {
            var = x;
            break;
        }
    if (var < 0) {
        out = Poly::constant(icg);
        return true;
    }
    Int xi = 2 * (max_norm(a) < max_norm(b) ? max_norm(a) : max_norm(b)) + 29;
    for (int tries = 0; tries < 6; ++tries) {
        Poly A = eval_var(a, var, xi);
        Poly B = eval_var(b, var, xi);
        Poly sub;
        if (A.is_zero() || B.is_zero() || !heugcd(A, B, sub, depth + 1)) return false;
        Poly g = reconstruct_var(std::move(sub), var, xi);
        if (!g.is_zero()) {
            Int gc = g.content();
            if (gc != 1) g.divexact_int_inplace(gc);
            Poly qa, qb;
            if (Poly::try_divexact(a, g, qa) && Poly::try_divexact(b, g, qb)) {
                g.mul_int_inplace(icg);
                out = std::move(g);
                return true;
            }
        }
        xi = xi * 3 + 7;
    }
    return false;
}

// sound upper bound for deg_var(gcd(a,b)); -2 means "no certificate"
int gcd_degree_bound(const Poly& a, const Poly& b, int var) {
    static const long pts[][2] = {{3, 5}, {7, 11}, {5, 13}, {17, 19}};
    int da = var_degree(a, var), db = var_degree(b, var);
    int best = std::min(da, db);
    for (const auto& pt : pts) {
        UniPoly ia = uni_image(a, var, pt[0], pt[1]);
        UniPoly ib = uni_image(b, var, pt[0], pt[1]);
        // leading coefficients must survive the substitution
        if (uni_deg(ia) != da || uni_deg(ib) != db) continue;
        best = std::min(best, uni_gcd_degree(std::move(ia), std::move(ib)));
        return best;
    }
    return -2;
}

}  // namespace

Poly Poly::gcd(const Poly& a0, const Poly& b0) {
    if (a0.is_zero()) return normalize_sign(b0);
    if (b0.is_zero()) return normalize_sign(a0);
    // shift Laurent inputs to genuine polynomials with min exponent 0
    auto shift0 = [](const Poly& p) {
        Exp3 m = p.min_exponents();
        Poly r = p;
        r.mul_mono_inplace(1, pack_exp(-m.eu, -m.ev, -m.ec));
        return r;
    };
    Poly a = shift0(a0), b = shift0(b0);
    Int ic = boost::multiprecision::gcd(a.content(), b.content());
    a.divexact_int_inplace(a.content());
    b.divexact_int_inplace(b.content());
    if (a.is_constant() || b.is_constant()) return constant(ic);
    // modular degree bounds: certify trivial gcds cheaply and pick the
    // cheapest main variable otherwise
    int var = -1;
    bool any_shared = false, all_zero = true;
    int best_metric = 1 << 30;
    for (int x = 0; x < 3; ++x) {
        int da = var_degree(a, x), db = var_degree(b, x);
        if (da == 0 || db == 0) continue;
        any_shared = true;
        int bound = gcd_degree_bound(a, b, x);
        if (bound != 0) all_zero = false;
        int metric = (bound >= 0 ? bound : std::min(da, db)) * 64 + std::min(da, db);
        if (bound != 0 && metric < best_metric) {
            best_metric = metric;
            var = x;
        }
    }
    if (!any_shared) return constant(ic);  // no shared variable
    if (all_zero) return constant(ic);     // certified trivial gcd
    if (var < 0) var = 0;
    {
        Poly hg;
        if (heugcd(a, b, hg)) {
            hg.mul_int_inplace(ic);
            return normalize_sign(hg);
        }
    }
    std::vector<Poly> ra = to_rec(a, var), rb = to_rec(b, var);
    Poly ca = rec_content(ra), cb = rec_content(rb);
    rec_divexact(ra, ca);
    rec_divexact(rb, cb);
    Poly cg = gcd(ca, cb);
    if (rec_deg(ra) < rec_deg(rb)) std::swap(ra, rb);
    // primitive polynomial remainder sequence
    while (true) {
        std::vector<Poly> r = rec_prem(ra, rb);
        if (rec_deg(r) < 0) break;
        Poly cr = rec_content(r);
        rec_divexact(r, cr);
        ra = std::move(rb);
        rb = std::move(r);
    }
    // make the surviving PRS element primitive before recombining
    Poly tail_content = rec_content(rb);
    rec_divexact(rb, tail_content);
    Poly g = from_rec(rb, var) * cg;
    g.mul_int_inplace(ic);
    return normalize_sign(g);
}

}  // namespace emn
