#include "csa/invariants.hpp"

#include <numeric>
#include <sstream>

namespace csa {

i64 lcm_i64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

// ----------------------------------------------------------------- HasseInv

HasseInv::HasseInv(i64 r, i64 s) {
    if (s == 0) throw std::invalid_argument("HasseInv: zero denominator");
    if (s < 0) {
        s = -s;
        r = -r;
    }
    r %= s;
    if (r < 0) r += s;
    i64 g = std::gcd(r, s);
    if (r == 0) {
        num = 0;
        den = 1;
    } else {
        num = r / g;
        den = s / g;
    }
}

HasseInv HasseInv::operator+(const HasseInv& o) const {
    return HasseInv(num * o.den + o.num * den, den * o.den);
}

HasseInv HasseInv::operator-() const { return HasseInv(-num, den); }

HasseInv HasseInv::scaled(i64 k) const { return HasseInv(num * k, den); }

std::string HasseInv::str() const { return std::to_string(num) + "/" + std::to_string(den); }

HasseInv HasseInv::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return HasseInv(std::stoll(s), 1);
    return HasseInv(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// ------------------------------------------------------------ SymbolAlgebra

SymbolAlgebra::SymbolAlgebra(i64 n_, FieldElem eps_, RatFunc a_, RatFunc b_)
    : n(n_), eps(std::move(eps_)), a(std::move(a_)), b(std::move(b_)) {
    if (n < 1) throw std::invalid_argument("symbol algebra: n must be positive");
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("symbol algebra: a, b must be nonzero");
    const auto& F = eps.field();
    if ((F->size() - 1) % n != 0) throw std::invalid_argument("symbol algebra: n does not divide q-1");
    if (n == 1) {
        if (!eps.is_one()) throw std::invalid_argument("symbol algebra: eps must be 1 for n = 1");
    } else if (eps.mul_order() != n) {
        throw std::invalid_argument("symbol algebra: eps must have order exactly n");
    }
}

// --------------------------------------------------------- InvariantProfile

InvariantProfile::InvariantProfile(std::map<Place, HasseInv> entries) {
    for (auto& [p, h] : entries)
        if (!h.is_zero()) m_.emplace(p, h);
}

HasseInv InvariantProfile::at(const Place& v) const {
    auto it = m_.find(v);
    return it == m_.end() ? HasseInv() : it->second;
}

HasseInv InvariantProfile::sum() const {
    HasseInv s;
    for (const auto& [p, h] : m_) s = s + h;
    return s;
}

i64 InvariantProfile::index() const {
    i64 l = 1;
    for (const auto& [p, h] : m_) l = lcm_i64(l, h.den);
    return l;
}

std::string InvariantProfile::str() const {
    std::ostringstream os;
    for (const auto& [p, h] : m_) os << p.str() << " -> " << h.str() << "\n";
    return os.str();
}

// -------------------------------------------------------------- conic tests

namespace {

// Power-residue classes without discrete logs and with machine-sized
// exponents only: since n | q-1, the n-th roots of unity already sit in the
// constant field, and x^((|k|-1)/n) equals N_{k|F_q}(x)^((q-1)/n).  The class
// of x is the index of that power against a fixed primitive n-th root of F_q.

// Residue norm down to the constant field the place lives over.
FieldElem norm_to_constants(const FieldElem& x, const FieldPtr& constants) {
    const auto& k = x.field();
    if (k->same_field(*constants)) return x;
    if (!k->base() || !k->base()->same_field(*constants))
        throw std::invalid_argument("norm_to_constants: field is not an extension of the constants");
    const i64 q = constants->size();
    FieldElem acc = x, y = x;
    for (i64 i = 1; i < k->degree(); ++i) {
        y = y.pow(q);
        acc = acc * y;
    }
    // the value lies in the embedded constant field: strip to base coordinates
    const i64 bd = constants->abs_degree();
    for (size_t i = bd; i < acc.coords().size(); ++i)
        if (acc.coords()[i] != 0) throw InvariantBreach("residue norm left the constant field");
    return constants->from_abs(std::vector<i64>(acc.coords().begin(), acc.coords().begin() + bd));
}

i64 class_mod_n(const FieldElem& x, const FieldPtr& constants, i64 n) {
    FieldElem nrm = norm_to_constants(x, constants);
    if (nrm.is_zero()) throw std::invalid_argument("power class of zero");
    FieldElem target = nrm.pow((constants->size() - 1) / n);
    FieldElem zeta = ff_root_of_unity(constants, n);
    FieldElem cur = constants->one();
    for (i64 c = 0; c < n; ++c) {
        if (cur == target) return c;
        cur = cur * zeta;
    }
    throw InvariantBreach("power class: norm power is not an n-th root of unity");
}

bool square_in_field(const FieldElem& x, const FieldPtr& constants) {
    if (x.is_zero()) throw std::invalid_argument("square test: zero element");
    return class_mod_n(x, constants, 2) == 0;
}

}  // namespace

bool conic_solvable_finite(const Poly& a1, const Poly& a2, const Poly& a3, const Place& f) {
    if (a1.is_zero() || a2.is_zero() || a3.is_zero())
        throw std::invalid_argument("conic test: coefficients must be nonzero");
    if (f.is_infinity()) throw std::invalid_argument("conic_solvable_finite: finite place required");
    const Poly a[3] = {a1, a2, a3};
    i64 v[3];
    for (int i = 0; i < 3; ++i) v[i] = valuation(a[i], f.poly());
    if ((v[0] & 1) == (v[1] & 1) && (v[1] & 1) == (v[2] & 1)) return true;
    int i = 0, j = 1;
    if ((v[0] & 1) == (v[1] & 1)) {
        i = 0;
        j = 1;
    } else if ((v[0] & 1) == (v[2] & 1)) {
        i = 0;
        j = 2;
    } else {
        i = 1;
        j = 2;
    }
    RatFunc u = RatFunc(a[i] * a[j]) / RatFunc(f.poly()).pow(v[i] + v[j]);
    ResidueField k(f);
    return square_in_field(-k.reduce(u), a1.field());
}

bool conic_solvable_infinity(const Poly& a1, const Poly& a2, const Poly& a3) {
    if (a1.is_zero() || a2.is_zero() || a3.is_zero())
        throw std::invalid_argument("conic test: coefficients must be nonzero");
    const Poly a[3] = {a1, a2, a3};
    i64 d[3];
    for (int i = 0; i < 3; ++i) d[i] = a[i].degree();
    if ((d[0] & 1) == (d[1] & 1) && (d[1] & 1) == (d[2] & 1)) return true;
    int i = 0, j = 1;
    if ((d[0] & 1) == (d[1] & 1)) {
        i = 0;
        j = 1;
    } else if ((d[0] & 1) == (d[2] & 1)) {
        i = 0;
        j = 2;
    } else {
        i = 1;
        j = 2;
    }
    return square_in_field(-(a[i].lc() * a[j].lc()), a1.field());
}

// --------------------------------------------------------- candidate places

std::vector<Place> candidate_places(const std::vector<RatFunc>& xs) {
    std::vector<Place> out;
    for (const auto& x : xs) {
        for (const Poly* part : {&x.num(), &x.den()}) {
            if (part->degree() < 1) continue;
            for (auto& [p, m] : poly_factor(*part)) {
                Place v = Place::finite(p);
                bool seen = false;
                for (const auto& w : out)
                    if (w == v) seen = true;
                if (!seen) out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    if (!xs.empty()) out.push_back(Place::infinity(xs[0].field()));
    return out;
}

std::vector<Place> quaternion_ramification(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("quaternion_ramification: parameters must be nonzero");
    const auto& F = a.field();
    if (F->characteristic() == 2)
        throw std::invalid_argument("quaternion_ramification: odd characteristic required");
    // square-class representatives as polynomials
    Poly ap = a.num() * a.den();
    Poly bp = b.num() * b.den();
    Poly minus_one = Poly::constant(-F->one());
    std::vector<Place> ram;
    for (const auto& v : candidate_places({a, b})) {
        bool split = v.is_infinity() ? conic_solvable_infinity(ap, bp, minus_one)
                                     : conic_solvable_finite(ap, bp, minus_one, v);
        if (!split) ram.push_back(v);
    }
    return ram;
}

// ------------------------------------------------- tame symbol calibration

namespace {

// Constant c in (Z/n)* such that inv_v(a,b;eps) = c * class(tame symbol) / n,
// relative to the same primitive root zeta the class is measured against.
// From the unramified-extension invariant formula: with eps = zeta^j, the
// symbol algebra occupying the residue-generator slot has invariant
// (-j)^{-1}/n, so c = (-j)^{-1} mod n.  The product c*class is independent
// of the choice of zeta.
i64 calibration_constant(i64 n, const FieldElem& eps_in_k, const FieldElem& zeta) {
    if (n == 1) return 0;
    i64 j = -1;
    FieldElem cur = eps_in_k.field()->one();
    for (i64 e = 0; e < n; ++e) {
        if (cur == eps_in_k) {
            j = e;
            break;
        }
        cur = cur * zeta;
    }
    if (j < 0) throw InvariantBreach("calibration: eps is not a power of zeta");
    i64 k0 = ((-j) % n + n) % n;
    if (std::gcd(k0, n) != 1) throw InvariantBreach("calibration: eps not primitive");
    for (i64 c = 1; c < n; ++c)
        if (c * k0 % n == 1) return c;
    throw InvariantBreach("calibration: no inverse");
}

HasseInv invariant_from_residue(const FieldElem& r, const FieldPtr& constants, i64 n,
                                const FieldElem& eps) {
    FieldElem zeta = ff_root_of_unity(constants, n);
    i64 cls = class_mod_n(r, constants, n);
    i64 c = calibration_constant(n, eps, zeta);
    return HasseInv(c * cls, n);
}

}  // namespace

HasseInv symbol_local_invariant(const SymbolAlgebra& A, const Place& v) {
    const auto& F = A.constants();
    const i64 n = A.n;
    if ((F->size() - 1) % n != 0)
        throw std::invalid_argument("symbol_local_invariant: n must divide q-1");
    if (n == 1) return HasseInv();
    i64 va = valuation(A.a, v), vb = valuation(A.b, v);
    RatFunc tame = A.a.pow(vb) / A.b.pow(va);
    if ((va * vb) % 2 != 0) tame = -tame;
    if (v.is_infinity()) return invariant_from_residue(residue_at_infinity(tame), F, n, A.eps);
    ResidueField k(v);
    FieldElem r = k.reduce(tame);
    if (r.is_zero()) throw InvariantBreach("tame symbol reduced to zero");
    return invariant_from_residue(r, F, n, A.eps);
}

InvariantProfile invariant_profile(const SymbolAlgebra& A) {
    std::map<Place, HasseInv> m;
    for (const auto& v : candidate_places({A.a, A.b})) {
        HasseInv h = symbol_local_invariant(A, v);
        if (!h.is_zero()) m.emplace(v, h);
    }
    InvariantProfile prof(std::move(m));
    if (!prof.reciprocity_holds())
        throw InvariantBreach("invariant profile violates reciprocity: " + prof.sum().str());
    return prof;
}

}  // namespace csa
