#include "csa/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace csa {

// --------------------------------------------------------------------- Poly

Poly::Poly(FieldPtr fld, std::vector<FieldElem> coeffs) : fld_(std::move(fld)), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (!e.field()->same_field(*fld_)) throw std::invalid_argument("poly coefficient field mismatch");
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::zero(const FieldPtr& f) { return Poly(f, {}); }
Poly Poly::one(const FieldPtr& f) { return Poly(f, {f->one()}); }
Poly Poly::constant(const FieldElem& c) { return Poly(c.field(), {c}); }
Poly Poly::t(const FieldPtr& f) { return Poly(f, {f->zero(), f->one()}); }

Poly Poly::monomial(const FieldElem& c, i64 k) {
    std::vector<FieldElem> v(k + 1, c.field()->zero());
    v[k] = c;
    return Poly(c.field(), std::move(v));
}

Poly Poly::from_ints(const FieldPtr& f, const std::vector<i64>& c) {
    std::vector<FieldElem> v;
    v.reserve(c.size());
    for (i64 x : c) v.push_back(f->from_int(x));
    return Poly(f, std::move(v));
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

FieldElem Poly::coeff(i64 i) const {
    if (i < 0 || i >= i64(c_.size())) return fld_->zero();
    return c_[i];
}

FieldElem Poly::lc() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<FieldElem> v(std::max(c_.size(), o.c_.size()), fld_->zero());
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return Poly(fld_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<FieldElem> v(std::max(c_.size(), o.c_.size()), fld_->zero());
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return Poly(fld_, std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero(fld_);
    std::vector<FieldElem> v(c_.size() + o.c_.size() - 1, fld_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
    }
    return Poly(fld_, std::move(v));
}

Poly Poly::operator-() const {
    std::vector<FieldElem> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(-e);
    return Poly(fld_, std::move(v));
}

Poly Poly::operator*(const FieldElem& s) const {
    std::vector<FieldElem> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(e * s);
    return Poly(fld_, std::move(v));
}

bool Poly::operator==(const Poly& o) const { return c_ == o.c_ && fld_->same_field(*o.fld_); }

Poly Poly::monic() const {
    if (is_zero()) throw std::invalid_argument("monic of zero polynomial");
    return *this * lc().inverse();
}

FieldElem Poly::eval(const FieldElem& x) const {
    FieldElem acc = fld_->zero();
    for (i64 i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::map_coeffs(const EmbeddingMap& emb) const {
    std::vector<FieldElem> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(emb.apply(e));
    return Poly(emb.sup(), std::move(v));
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const bool prime_coeffs = fld_->is_prime_field();
    for (i64 i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = prime_coeffs ? std::to_string(c_[i].coords()[0]) : "(" + c_[i].str() + ")";
        if (i == 0) {
            os << cs;
        } else {
            if (!c_[i].is_one()) os << cs << "*";
            os << (i == 1 ? "t" : "t^" + std::to_string(i));
        }
    }
    return os.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    const auto& f = a.field();
    Poly q = Poly::zero(f), r = a;
    const FieldElem lb = b.lc().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        FieldElem c = r.lc() * lb;
        i64 k = r.degree() - b.degree();
        Poly term = Poly::monomial(c, k);
        q = q + term;
        r = r - term * b;
    }
    return {q, r};
}

Poly poly_mod(const Poly& a, const Poly& m) { return poly_divmod(a, m).second; }

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).second;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.monic();
}

Poly poly_powmod(const Poly& base, i64 e, const Poly& m) {
    Poly r = Poly::one(base.field());
    Poly b = poly_mod(base, m);
    while (e > 0) {
        if (e & 1) r = poly_mod(r * b, m);
        b = poly_mod(b * b, m);
        e >>= 1;
    }
    return r;
}

Poly poly_crt(const std::vector<std::pair<Poly, Poly>>& residues) {
    if (residues.empty()) throw std::invalid_argument("poly_crt: empty input");
    for (size_t i = 0; i < residues.size(); ++i)
        for (size_t j = i + 1; j < residues.size(); ++j)
            if (poly_gcd(residues[i].second, residues[j].second).degree() != 0)
                throw std::invalid_argument("poly_crt: moduli not coprime");
    const auto& f = residues[0].first.field();
    Poly result = Poly::zero(f), modulus = Poly::one(f);
    for (const auto& [r, m] : residues) {
        // combine: result mod modulus, r mod m
        // find u with (r - result) = u * modulus (mod m)
        Poly diff = poly_mod(r - result, m);
        // inverse of modulus mod m via extended Euclid
        Poly a = poly_mod(modulus, m), b = m;
        Poly s0 = Poly::one(f), s1 = Poly::zero(f);
        while (!b.is_zero()) {
            auto [q, rem] = poly_divmod(a, b);
            a = b;
            b = rem;
            Poly ns = s0 - q * s1;
            s0 = s1;
            s1 = ns;
        }
        // a = gcd (a unit since moduli coprime and modulus invertible mod m)
        if (a.degree() != 0) throw std::invalid_argument("poly_crt: moduli not coprime");
        Poly inv = s0 * a.lc().inverse();
        Poly u = poly_mod(diff * inv, m);
        result = result + u * modulus;
        modulus = modulus * m;
    }
    return poly_mod(result, modulus);
}

bool poly_irreducible(const Poly& f) {
    const i64 d = f.degree();
    if (d < 1) throw std::invalid_argument("poly_irreducible: constant input");
    const auto& F = f.field();
    const i64 q = F->size();
    // Rabin: t^(q^d) = t mod f, and gcd(t^(q^(d/l)) - t, f) = 1 for primes l | d
    std::vector<Poly> frob(d + 1, Poly::zero(F));  // frob[i] = t^(q^i) mod f
    frob[0] = poly_mod(Poly::t(F), f);
    for (i64 i = 1; i <= d; ++i) frob[i] = poly_powmod(frob[i - 1], q, f);
    if (frob[d] != poly_mod(Poly::t(F), f)) return false;
    for (i64 l : prime_factors(d)) {
        Poly g = poly_gcd(frob[d / l] - Poly::t(F), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

Poly random_monic(const FieldPtr& f, i64 deg, Rng& rng) {
    std::vector<FieldElem> c;
    c.reserve(deg + 1);
    for (i64 i = 0; i < deg; ++i) c.push_back(f->from_index(rng.below(f->size())));
    c.push_back(f->one());
    return Poly(f, std::move(c));
}

std::vector<std::pair<Poly, i64>> poly_factor(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("poly_factor: zero polynomial");
    const auto& F = f.field();
    const i64 q = F->size();
    std::vector<std::pair<Poly, i64>> out;
    Poly work = f.monic();

    // internal deterministic randomness: factoring output itself is canonical
    Rng rng(0x5eedf00dULL + std::uint64_t(q));

    // squarefree part handling: repeatedly strip multiplicities via gcd trial division
    // (desk scale: extract factors degree by degree with distinct-degree splitting)
    std::vector<Poly> stack{work};
    std::vector<Poly> irred;
    while (!stack.empty()) {
        Poly g = stack.back();
        stack.pop_back();
        if (g.degree() == 0) continue;
        if (g.degree() == 1 || poly_irreducible(g)) {
            irred.push_back(g.monic());
            continue;
        }
        // derivative-based squarefree split
        std::vector<FieldElem> dc;
        for (i64 i = 1; i <= g.degree(); ++i) dc.push_back(g.coeff(i) * F->from_int(i));
        Poly deriv(F, dc);
        if (deriv.is_zero()) {
            // g = h(t^p): take p-th root coefficientwise (q = p^e: c^(q/p) is the p-th root)
            const i64 p = F->characteristic();
            std::vector<FieldElem> hc;
            for (i64 i = 0; i <= g.degree(); i += p) hc.push_back(g.coeff(i).pow(F->size() / p));
            Poly h(F, hc);
            for (i64 i = 0; i < p; ++i) stack.push_back(h);
            continue;
        }
        Poly sf = poly_gcd(g, deriv);
        if (sf.degree() > 0) {
            stack.push_back(sf);
            stack.push_back(poly_divmod(g, sf).first);
            continue;
        }
        // g squarefree and reducible: distinct-degree then Cantor-Zassenhaus split
        bool split = false;
        Poly tq = poly_mod(Poly::t(F), g);
        for (i64 d = 1; 2 * d <= g.degree() && !split; ++d) {
            tq = poly_powmod(tq, q, g);
            Poly dd = poly_gcd(tq - Poly::t(F), g);
            if (dd.degree() > 0 && dd.degree() < g.degree()) {
                stack.push_back(dd);
                stack.push_back(poly_divmod(g, dd).first);
                split = true;
                break;
            }
            if (dd.degree() == g.degree() && d < g.degree()) {
                // product of irreducibles all of degree d: equal-degree split
                while (true) {
                    Poly r = random_monic(F, g.degree() - 1, rng);
                    Poly e = r;
                    if (q % 2 == 1) {
                        // r^((q^d-1)/2) mod g
                        Poly base = poly_mod(r, g);
                        // exponent (q^d-1)/2 may exceed i64 for large q^d: iterate
                        // as r^((q-1)/2 * (q^(d-1)+...+1)) via repeated powmod
                        Poly s = poly_powmod(base, (q - 1) / 2, g);
                        Poly term = s;
                        for (i64 i = 1; i < d; ++i) {
                            term = poly_powmod(term, q, g);
                            s = poly_mod(s * term, g);
                        }
                        e = s;
                    } else {
                        // trace map for characteristic 2
                        Poly s = poly_mod(r, g);
                        Poly acc = s;
                        for (i64 i = 1; i < d * (F->abs_degree()); ++i) {
                            s = poly_mod(s * s, g);
                            acc = acc + s;
                        }
                        e = acc;
                    }
                    Poly cand = poly_gcd(e - Poly::one(F), g);
                    if (cand.degree() > 0 && cand.degree() < g.degree()) {
                        stack.push_back(cand);
                        stack.push_back(poly_divmod(g, cand).first);
                        split = true;
                        break;
                    }
                }
                break;
            }
        }
        if (!split) throw InvariantBreach("poly_factor: failed to split reducible polynomial");
    }
    // collect multiplicities
    std::sort(irred.begin(), irred.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (i64 i = a.degree(); i >= 0; --i) {
            i64 ia = a.field()->index_of(a.coeff(i)), ib = b.field()->index_of(b.coeff(i));
            if (ia != ib) return ia < ib;
        }
        return false;
    });
    for (const auto& p : irred) {
        if (!out.empty() && out.back().first == p)
            out.back().second++;
        else
            out.push_back({p, 1});
    }
    return out;
}

// ----------------------------------------------------- irreducible sampling

Poly sample_irreducible_congruent(const Poly& B, const Poly& F, const FieldElem& mu,
                                  i64 deg_target, i64 deg_mod, Rng& rng) {
    const auto& fld = F.field();
    if (F.degree() < 1) throw std::invalid_argument("sample_irreducible: deg F must be >= 1");
    if (mu.is_zero()) throw std::invalid_argument("sample_irreducible: mu must be nonzero");
    if (poly_gcd(B, F).degree() != 0) throw std::invalid_argument("sample_irreducible: gcd(B,F) != 1");
    const i64 d = F.degree();
    i64 N = 4 * d;
    while (N % deg_mod != ((deg_target % deg_mod) + deg_mod) % deg_mod) ++N;
    const Poly Bmu = poly_mod(B * Poly::constant(mu.inverse()), F);
    const i64 budget = 3 * N;
    for (i64 round = 0; round < budget; ++round) {
        Poly g = random_monic(fld, N - d, rng);
        Poly u_prime = F * g + Bmu;
        if (poly_irreducible(u_prime)) return u_prime * mu;
    }
    throw SamplingError("sample_irreducible: retry budget exhausted");
}

Poly sample_irreducible_in_class(const Poly& B, const Poly& F, const FieldElem& mu, int eps,
                                 Rng& rng) {
    if (eps != 0 && eps != 1) throw std::invalid_argument("sample_irreducible: parity must be 0 or 1");
    return sample_irreducible_congruent(B, F, mu, 4 * F.degree() + eps, 2, rng);
}

// ------------------------------------------------------------------ RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::one(num_.field());
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_divmod(num_, g).first;
        den_ = poly_divmod(den_, g).first;
    }
    FieldElem l = den_.lc();
    if (!l.is_one()) {
        FieldElem inv = l.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc::RatFunc(Poly num) : RatFunc(num, Poly::one(num.field())) {}

RatFunc RatFunc::zero(const FieldPtr& f) { return RatFunc(Poly::zero(f)); }
RatFunc RatFunc::one(const FieldPtr& f) { return RatFunc(Poly::one(f)); }
RatFunc RatFunc::constant(const FieldElem& c) { return RatFunc(Poly::constant(c)); }
RatFunc RatFunc::t(const FieldPtr& f) { return RatFunc(Poly::t(f)); }

RatFunc RatFunc::from_ints(const FieldPtr& f, const std::vector<i64>& num,
                           const std::vector<i64>& den) {
    return RatFunc(Poly::from_ints(f, num), Poly::from_ints(f, den));
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

bool RatFunc::operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(i64 k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc r = one(field()), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

RatFunc RatFunc::map_coeffs(const EmbeddingMap& emb) const {
    return RatFunc(num_.map_coeffs(emb), den_.map_coeffs(emb));
}

std::string RatFunc::str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

// -------------------------------------------------------------------- Place

Place Place::finite(Poly f) {
    if (f.degree() < 1) throw std::invalid_argument("finite place: polynomial must be nonconstant");
    if (!f.is_monic()) throw std::invalid_argument("finite place: polynomial must be monic");
    if (!poly_irreducible(f)) throw std::invalid_argument("finite place: polynomial must be irreducible");
    Place p;
    p.fld_ = f.field();
    p.v_ = std::move(f);
    return p;
}

Place Place::infinity(FieldPtr f) {
    Place p;
    p.fld_ = std::move(f);
    p.v_ = Inf{};
    return p;
}

const Poly& Place::poly() const {
    if (is_infinity()) throw std::invalid_argument("place at infinity has no polynomial");
    return std::get<Poly>(v_);
}

bool Place::operator==(const Place& o) const {
    if (is_infinity() != o.is_infinity()) return false;
    if (is_infinity()) return fld_->same_field(*o.fld_);
    return poly() == o.poly();
}

bool Place::operator<(const Place& o) const {
    if (is_infinity()) return false;
    if (o.is_infinity()) return true;
    const Poly& a = poly();
    const Poly& b = o.poly();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (i64 i = a.degree(); i >= 0; --i) {
        i64 ia = fld_->index_of(a.coeff(i)), ib = fld_->index_of(b.coeff(i));
        if (ia != ib) return ia < ib;
    }
    return false;
}

std::string Place::str() const { return is_infinity() ? "inf" : "finite:" + poly().str(); }

i64 valuation(const Poly& x, const Poly& f) {
    if (x.is_zero()) throw std::invalid_argument("valuation of zero");
    i64 v = 0;
    Poly r = x;
    while (true) {
        auto [q, rem] = poly_divmod(r, f);
        if (!rem.is_zero()) return v;
        r = q;
        ++v;
    }
}

i64 valuation(const RatFunc& x, const Place& v) {
    if (x.is_zero()) throw std::invalid_argument("valuation of zero");
    if (v.is_infinity()) return x.den().degree() - x.num().degree();
    return valuation(x.num(), v.poly()) - valuation(x.den(), v.poly());
}

FieldElem residue_at_infinity(const RatFunc& x) {
    if (x.is_zero()) throw std::invalid_argument("residue of zero");
    if (x.num().degree() != x.den().degree())
        throw std::invalid_argument("residue at infinity requires valuation 0");
    return x.num().lc() * x.den().lc().inverse();
}

// ----------------------------------------------------------------- moebius

namespace {

// p((a t + b)/(c t + d)) * (c t + d)^deg p, a polynomial
Poly poly_moebius_hom(const Poly& p, const Poly& n, const Poly& m) {
    const auto& f = p.field();
    if (p.is_zero()) return Poly::zero(f);
    const i64 d = p.degree();
    Poly acc = Poly::zero(f);
    Poly npow = Poly::one(f);
    std::vector<Poly> mpows(d + 1, Poly::one(f));
    for (i64 i = 1; i <= d; ++i) mpows[i] = mpows[i - 1] * m;
    for (i64 i = 0; i <= d; ++i) {
        acc = acc + npow * mpows[d - i] * Poly::constant(p.coeff(i));
        npow = npow * n;
    }
    return acc;
}

}  // namespace

RatFunc moebius_substitute_matrix(const RatFunc& x, const FieldElem& a, const FieldElem& b,
                                  const FieldElem& c, const FieldElem& d) {
    if ((a * d - b * c).is_zero()) throw std::invalid_argument("moebius matrix must be invertible");
    const auto& f = x.field();
    Poly n(f, {b, a});  // a t + b
    Poly m(f, {d, c});  // c t + d
    const i64 dn = x.num().degree(), dd = x.den().degree();
    Poly pn = poly_moebius_hom(x.num(), n, m);
    Poly pd = poly_moebius_hom(x.den(), n, m);
    // clear the (c t + d)^deg factors to a common power
    if (dn > dd)
        pd = pd * [&] {
            Poly mm = Poly::one(f);
            for (i64 i = 0; i < dn - dd; ++i) mm = mm * m;
            return mm;
        }();
    else if (dd > dn)
        pn = pn * [&] {
            Poly mm = Poly::one(f);
            for (i64 i = 0; i < dd - dn; ++i) mm = mm * m;
            return mm;
        }();
    return RatFunc(pn, pd);
}

RatFunc moebius_substitute(const RatFunc& x, const FieldElem& c) {
    const auto& f = x.field();
    return moebius_substitute_matrix(x, -c, f->one(), f->one(), f->zero());
}

RatFunc moebius_substitute_inverse(const RatFunc& x, const FieldElem& c) {
    const auto& f = x.field();
    return moebius_substitute_matrix(x, f->zero(), f->one(), f->one(), c);
}

// ------------------------------------------------------------- ResidueField

ResidueField::ResidueField(const Place& finite_place) {
    if (finite_place.is_infinity())
        throw std::invalid_argument("residue field: finite place required");
    f_ = finite_place.poly();
    const auto& base = f_.field();
    if (f_.degree() == 1) {
        fld_ = base;
    } else {
        std::vector<FieldElem> mod = f_.coeffs();
        fld_ = Field::extension(base, mod);
    }
}

FieldElem ResidueField::reduce(const Poly& a) const {
    if (f_.degree() == 1) return a.eval(-f_.coeff(0));
    Poly r = poly_mod(a, f_);
    // pack base coefficients into absolute coordinates
    std::vector<i64> abs;
    for (i64 i = 0; i < f_.degree(); ++i) {
        FieldElem ci = r.coeff(i);
        abs.insert(abs.end(), ci.coords().begin(), ci.coords().end());
    }
    return fld_->from_abs(abs);
}

FieldElem ResidueField::reduce(const RatFunc& x) const {
    if (x.is_zero()) return fld_->zero();
    if (valuation(x.den(), f_) != 0) throw std::invalid_argument("residue: denominator vanishes at place");
    return reduce(x.num()) * reduce(x.den()).inverse();
}

Poly ResidueField::lift(const FieldElem& x) const {
    const auto& base = f_.field();
    if (f_.degree() == 1) return Poly::constant(x);
    const i64 bd = base->abs_degree();
    std::vector<FieldElem> c;
    for (i64 i = 0; i < f_.degree(); ++i) {
        std::vector<i64> part(x.coords().begin() + i * bd, x.coords().begin() + (i + 1) * bd);
        c.push_back(base->from_abs(part));
    }
    return Poly(base, c);
}

}  // namespace csa
