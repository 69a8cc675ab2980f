#include "csa/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace csa {

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

i64 mod_norm(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

i64 mod_inv(i64 a, i64 p) {
    // extended Euclid in Z/p
    i64 t = 0, nt = 1, r = p, nr = mod_norm(a, p);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inv: not invertible");
    return mod_norm(t, p);
}

// --- minimal F_p[x] arithmetic used for modulus search (coeff c[0] = constant)
using ZPoly = std::vector<i64>;

void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zp_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, i64 p) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    // reduce mod monic f
    const size_t d = f.size() - 1;
    for (size_t k = c.size(); k-- > d;) {
        i64 q = c[k] % p;
        if (q == 0) continue;
        for (size_t i = 0; i < d; ++i) c[k - d + i] = mod_norm(c[k - d + i] - q * f[i], p);
        c[k] = 0;
    }
    c.resize(d);
    zp_trim(c);
    return c;
}

ZPoly zp_powmod(ZPoly base, i64 e, const ZPoly& f, i64 p) {
    ZPoly r{1};
    while (e > 0) {
        if (e & 1) r = zp_mulmod(r, base, f, p);
        base = zp_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

ZPoly zp_gcd(ZPoly a, ZPoly b, i64 p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        // a mod b
        i64 lead_inv = mod_inv(b.back(), p);
        while (a.size() >= b.size()) {
            i64 q = a.back() * lead_inv % p;
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[shift + i] = mod_norm(a[shift + i] - q * b[i], p);
            zp_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool zp_irreducible(const ZPoly& f, i64 p) {
    // Rabin test: x^(p^e) = x mod f, and gcd(x^(p^(e/l)) - x, f) = 1 for primes l | e
    const i64 e = i64(f.size()) - 1;
    if (e < 1) return false;
    ZPoly x{0, 1};
    ZPoly fr = x;  // x^(p^i) mod f
    std::vector<ZPoly> frob_powers{fr};
    for (i64 i = 0; i < e; ++i) {
        fr = zp_powmod(fr, p, f, p);
        frob_powers.push_back(fr);
    }
    ZPoly diff = frob_powers[e];
    // subtract x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod_norm(diff[1] - 1, p);
    zp_trim(diff);
    if (!diff.empty()) return false;
    for (i64 l : prime_factors(e)) {
        ZPoly d = frob_powers[e / l];
        if (d.size() < 2) d.resize(2, 0);
        d[1] = mod_norm(d[1] - 1, p);
        zp_trim(d);
        ZPoly g = zp_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

struct Registry {
    std::mutex mu;
    std::map<i64, FieldPtr> primes;
    std::map<std::pair<i64, i64>, FieldPtr> canonical;
    std::map<std::pair<const Field*, std::vector<i64>>, FieldPtr> extensions;
    std::map<std::pair<const Field*, const Field*>, EmbeddingMap> embeddings;

    static Registry& get() {
        static Registry r;
        return r;
    }
};

std::vector<i64> flatten_modulus(const std::vector<FieldElem>& m) {
    std::vector<i64> key;
    for (const auto& c : m)
        for (i64 v : c.coords()) key.push_back(v);
    return key;
}

}  // namespace

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem(FieldPtr fld, std::vector<i64> abs_coords)
    : fld_(std::move(fld)), c_(std::move(abs_coords)) {
    if (i64(c_.size()) != fld_->abs_degree()) throw std::invalid_argument("coordinate length mismatch");
    for (i64& v : c_) v = mod_norm(v, fld_->characteristic());
}

bool FieldElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](i64 v) { return v == 0; });
}

bool FieldElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](i64 v) { return v == 0; });
}

static void check_same(const FieldElem& a, const FieldElem& b) {
    if (!a.field() || !b.field() || !a.field()->same_field(*b.field()))
        throw std::invalid_argument("field mismatch in element arithmetic");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same(*this, o);
    return FieldElem(fld_, fld_->add(c_, o.c_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same(*this, o);
    return FieldElem(fld_, fld_->sub(c_, o.c_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same(*this, o);
    return FieldElem(fld_, fld_->mul(c_, o.c_));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    check_same(*this, o);
    return *this * o.inverse();
}

FieldElem FieldElem::operator-() const { return FieldElem(fld_, fld_->neg(c_)); }

bool FieldElem::operator==(const FieldElem& o) const {
    if (!fld_ || !o.fld_) return fld_ == o.fld_;
    return fld_->same_field(*o.fld_) && c_ == o.c_;
}

FieldElem FieldElem::inverse() const { return FieldElem(fld_, fld_->inv(c_)); }

FieldElem FieldElem::pow(i64 k) const {
    if (is_zero()) {
        if (k < 0) throw std::invalid_argument("pow: zero to negative power");
        return k == 0 ? fld_->one() : *this;
    }
    if (fld_->size_known()) {
        i64 ord = fld_->size() - 1;
        k %= ord;
        if (k < 0) k += ord;
    } else if (k < 0) {
        return inverse().pow(-k);
    }
    FieldElem r = fld_->one(), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

FieldElem FieldElem::frobenius(i64 p_power) const {
    i64 e = fld_->abs_degree();
    p_power %= e;
    if (p_power < 0) p_power += e;
    FieldElem r = *this;
    for (i64 i = 0; i < p_power; ++i) r = r.pow(fld_->characteristic());
    return r;
}

i64 FieldElem::mul_order() const {
    if (is_zero()) throw std::invalid_argument("mul_order of zero");
    i64 ord = fld_->size() - 1;
    for (i64 f : fld_->unit_group_prime_factors())
        while (ord % f == 0 && pow(ord / f).is_one()) ord /= f;
    return ord;
}

std::string FieldElem::str() const {
    // polynomial in w over F_p (single-level fields keep the structural basis)
    std::ostringstream os;
    bool first = true;
    for (i64 i = i64(c_.size()) - 1; i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c_[i];
        } else {
            if (c_[i] != 1) os << c_[i] << "*";
            os << (i == 1 ? "w" : "w^" + std::to_string(i));
        }
    }
    if (first) os << "0";
    return os.str();
}

// -------------------------------------------------------------------- Field

FieldPtr Field::prime(i64 p) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    auto& reg = Registry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.primes.find(p);
    if (it != reg.primes.end()) return it->second;
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->deg_ = 1;
    f->abs_deg_ = 1;
    f->size_ = p;
    reg.primes[p] = f;
    return f;
}

FieldPtr Field::extension(const FieldPtr& base, const std::vector<FieldElem>& modulus) {
    if (modulus.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    if (!modulus.back().is_one()) throw std::invalid_argument("modulus must be monic");
    for (const auto& c : modulus)
        if (!c.field()->same_field(*base)) throw std::invalid_argument("modulus not over base field");
    i64 d = i64(modulus.size()) - 1;
    if (!base->size_known()) throw std::invalid_argument("extension of an oversized field");
    if (d * base->abs_degree() > 64) throw std::invalid_argument("extension degree exceeds bound");
    i64 sz = 1;
    for (i64 i = 0; i < d * base->abs_degree(); ++i) {
        if (sz > (i64(1) << 56)) {
            sz = kSizeOverflow;
            break;
        }
        sz *= base->characteristic();
    }
    auto& reg = Registry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto key = std::make_pair(base.get(), flatten_modulus(modulus));
    auto it = reg.extensions.find(key);
    if (it != reg.extensions.end()) return it->second;
    auto f = std::shared_ptr<Field>(new Field());
    f->base_ = base;
    f->modulus_ = modulus;
    f->p_ = base->characteristic();
    f->deg_ = d;
    f->abs_deg_ = d * base->abs_degree();
    f->size_ = sz;
    reg.extensions[key] = f;
    return f;
}

FieldElem Field::zero() const {
    return FieldElem(shared_from_this(), std::vector<i64>(abs_deg_, 0));
}

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(i64 k) const {
    std::vector<i64> c(abs_deg_, 0);
    c[0] = mod_norm(k, p_);
    return FieldElem(shared_from_this(), c);
}

FieldElem Field::from_abs(std::vector<i64> coords) const {
    return FieldElem(shared_from_this(), std::move(coords));
}

FieldElem Field::from_index(i64 k) const {
    if (k < 0 || (size_known() && k >= size_)) throw std::invalid_argument("element index out of range");
    std::vector<i64> c(abs_deg_);
    for (i64 i = 0; i < abs_deg_; ++i) {
        c[i] = k % p_;
        k /= p_;
    }
    return FieldElem(shared_from_this(), c);
}

i64 Field::index_of(const FieldElem& x) const {
    i64 k = 0;
    for (i64 i = abs_deg_ - 1; i >= 0; --i) k = k * p_ + x.coords()[i];
    return k;
}

FieldElem Field::structural_root() const {
    if (is_prime_field()) return zero();
    std::vector<i64> c(abs_deg_, 0);
    c[base_->abs_degree()] = 1;  // w * (1 of base)
    return FieldElem(shared_from_this(), c);
}

const std::vector<i64>& Field::unit_group_prime_factors() const {
    if (!size_known()) throw std::invalid_argument("unit group factorization: field too large");
    auto& reg = Registry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    if (unit_factors_.empty()) unit_factors_ = prime_factors(size_ - 1);
    return unit_factors_;
}

const FieldElem& Field::generator() const {
    {
        auto& reg = Registry::get();
        std::lock_guard<std::mutex> lock(reg.mu);
        if (generator_) return *generator_;
    }
    if (!size_known() || size_ > kMaxSize)
        throw std::invalid_argument("generator: field exceeds the discrete-log size bound");
    const i64 ord = size_ - 1;
    auto factors = unit_group_prime_factors();
    for (i64 k = 1; k < size_; ++k) {
        FieldElem x = from_index(k);
        bool primitive = true;
        for (i64 f : factors) {
            if (x.pow(ord / f).is_one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            auto& reg = Registry::get();
            std::lock_guard<std::mutex> lock(reg.mu);
            if (!generator_) generator_ = x;
            return *generator_;
        }
    }
    throw InvariantBreach("no primitive element found");
}

i64 Field::dlog(const FieldElem& x) const {
    if (x.is_zero()) throw std::invalid_argument("dlog of zero");
    if (!size_known() || size_ > kMaxSize)
        throw std::invalid_argument("dlog: field exceeds the discrete-log size bound");
    const i64 ord = size_ - 1;
    const FieldElem g = generator();
    i64 m;
    {
        auto& reg = Registry::get();
        std::lock_guard<std::mutex> lock(reg.mu);
        if (baby_table_.empty()) {
            baby_m_ = 1;
            while (baby_m_ * baby_m_ < ord) ++baby_m_;
            FieldElem cur = one();
            for (i64 j = 0; j < baby_m_; ++j) {
                baby_table_.push_back(cur.coords());
                cur = cur * g;
            }
        }
        m = baby_m_;
    }
    std::map<std::vector<i64>, i64> baby;
    {
        auto& reg = Registry::get();
        std::lock_guard<std::mutex> lock(reg.mu);
        for (i64 j = 0; j < m; ++j) baby.emplace(baby_table_[j], j);
    }
    const FieldElem giant = g.pow(-m);
    FieldElem cur = x;
    for (i64 i = 0; i <= m; ++i) {
        auto it = baby.find(cur.coords());
        if (it != baby.end()) {
            i64 res = (i * m + it->second) % ord;
            return res;
        }
        cur = cur * giant;
    }
    throw InvariantBreach("dlog failed");
}

bool Field::same_field(const Field& o) const {
    if (this == &o) return true;
    if (p_ != o.p_ || abs_deg_ != o.abs_deg_ || deg_ != o.deg_) return false;
    if (is_prime_field() != o.is_prime_field()) return false;
    if (is_prime_field()) return true;
    if (!base_->same_field(*o.base_)) return false;
    return flatten_modulus(modulus_) == flatten_modulus(o.modulus_);
}

std::string Field::str() const {
    std::ostringstream os;
    os << "GF(" << p_ << "^" << abs_deg_ << "; modulus=";
    if (is_prime_field()) {
        os << "w";
    } else if (base_->is_prime_field()) {
        bool first = true;
        for (i64 i = deg_; i >= 0; --i) {
            i64 c = (i == deg_) ? 1 : modulus_[i].coords()[0];
            if (c == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0) {
                os << c;
            } else {
                if (c != 1) os << c << "*";
                os << (i == 1 ? "w" : "w^" + std::to_string(i));
            }
        }
    } else {
        os << "<tower of depth >1>";
    }
    os << ")";
    return os.str();
}

// arithmetic on absolute coordinates ---------------------------------------

std::vector<i64> Field::add(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i64> c(abs_deg_);
    for (i64 i = 0; i < abs_deg_; ++i) c[i] = mod_norm(a[i] + b[i], p_);
    return c;
}

std::vector<i64> Field::sub(const std::vector<i64>& a, const std::vector<i64>& b) const {
    std::vector<i64> c(abs_deg_);
    for (i64 i = 0; i < abs_deg_; ++i) c[i] = mod_norm(a[i] - b[i], p_);
    return c;
}

std::vector<i64> Field::neg(const std::vector<i64>& a) const {
    std::vector<i64> c(abs_deg_);
    for (i64 i = 0; i < abs_deg_; ++i) c[i] = mod_norm(-a[i], p_);
    return c;
}

std::vector<i64> Field::mul(const std::vector<i64>& a, const std::vector<i64>& b) const {
    if (is_prime_field()) return {a[0] * b[0] % p_};
    const i64 bd = base_->abs_degree();
    // unpack into polynomials of degree < deg_ over base
    auto slice = [&](const std::vector<i64>& v, i64 j) {
        return std::vector<i64>(v.begin() + j * bd, v.begin() + (j + 1) * bd);
    };
    std::vector<std::vector<i64>> conv(2 * deg_ - 1, std::vector<i64>(bd, 0));
    for (i64 i = 0; i < deg_; ++i) {
        auto ai = slice(a, i);
        bool zero = std::all_of(ai.begin(), ai.end(), [](i64 v) { return v == 0; });
        if (zero) continue;
        for (i64 j = 0; j < deg_; ++j)
            conv[i + j] = base_->add(conv[i + j], base_->mul(ai, slice(b, j)));
    }
    // reduce by the monic modulus: w^deg = -sum modulus_[i] w^i
    for (i64 k = 2 * deg_ - 2; k >= deg_; --k) {
        auto q = conv[k];
        bool zero = std::all_of(q.begin(), q.end(), [](i64 v) { return v == 0; });
        if (zero) continue;
        for (i64 i = 0; i < deg_; ++i)
            conv[k - deg_ + i] =
                base_->sub(conv[k - deg_ + i], base_->mul(q, modulus_[i].coords()));
    }
    std::vector<i64> out;
    out.reserve(abs_deg_);
    for (i64 j = 0; j < deg_; ++j)
        out.insert(out.end(), conv[j].begin(), conv[j].end());
    return out;
}

std::vector<i64> Field::inv(const std::vector<i64>& a) const {
    bool zero = std::all_of(a.begin(), a.end(), [](i64 v) { return v == 0; });
    if (zero) throw std::invalid_argument("inverse of zero");
    if (is_prime_field()) return {mod_inv(a[0], p_)};
    // extended Euclid against the modulus, coefficients in the base field
    using BPoly = std::vector<std::vector<i64>>;  // base coords, constant first
    const i64 bd = base_->abs_degree();
    auto is_bzero = [](const std::vector<i64>& v) {
        return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
    };
    auto trim = [&](BPoly& f) {
        while (!f.empty() && is_bzero(f.back())) f.pop_back();
    };
    auto unpack = [&](const std::vector<i64>& v) {
        BPoly f;
        for (i64 j = 0; j < deg_; ++j)
            f.push_back(std::vector<i64>(v.begin() + j * bd, v.begin() + (j + 1) * bd));
        trim(f);
        return f;
    };
    std::vector<i64> bzero(bd, 0), bone(bd, 0);
    bone[0] = 1;
    BPoly r0;  // the modulus, including the leading 1
    for (const auto& c : modulus_) r0.push_back(c.coords());
    BPoly r1 = unpack(a);
    BPoly s0{}, s1{bone};
    auto submul = [&](BPoly f, const BPoly& g, const std::vector<i64>& c, i64 shift) {
        // f - c * x^shift * g
        if (f.size() < g.size() + shift) f.resize(g.size() + shift, bzero);
        for (size_t i = 0; i < g.size(); ++i)
            f[i + shift] = base_->sub(f[i + shift], base_->mul(c, g[i]));
        trim(f);
        return f;
    };
    while (!r1.empty()) {
        // divide r0 by r1, tracking only the cofactor of `a`
        std::vector<i64> lead_inv = base_->inv(r1.back());
        BPoly rem = r0, q_applied_s = s0;
        while (rem.size() >= r1.size()) {
            std::vector<i64> c = base_->mul(rem.back(), lead_inv);
            i64 shift = i64(rem.size() - r1.size());
            rem = submul(rem, r1, c, shift);
            q_applied_s = submul(q_applied_s, s1, c, shift);
        }
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = q_applied_s;
    }
    // r0 = gcd = nonzero constant (modulus irreducible); s0 * a = r0 mod modulus
    if (r0.size() != 1) throw InvariantBreach("field inverse: modulus not irreducible?");
    std::vector<i64> scale = base_->inv(r0[0]);
    std::vector<i64> out;
    for (i64 j = 0; j < deg_; ++j) {
        std::vector<i64> c = j < i64(s0.size()) ? base_->mul(s0[j], scale) : bzero;
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

// ------------------------------------------------------------------ ff_make

FieldPtr ff_make(i64 p, i64 e) {
    if (!is_prime(p)) throw std::invalid_argument("ff_make: p must be prime");
    if (e < 1) throw std::invalid_argument("ff_make: e must be >= 1");
    {
        auto& reg = Registry::get();
        std::lock_guard<std::mutex> lock(reg.mu);
        auto it = reg.canonical.find({p, e});
        if (it != reg.canonical.end()) return it->second;
    }
    FieldPtr f;
    if (e == 1) {
        f = Field::prime(p);
    } else {
        i64 sz = 1;
        for (i64 i = 0; i < e; ++i) {
            sz *= p;
            if (sz > Field::kMaxSize) throw std::invalid_argument("ff_make: field size exceeds bound");
        }
        // lexicographically least monic irreducible of degree e, coordinate order
        FieldPtr fp = Field::prime(p);
        i64 count = 1;
        for (i64 i = 0; i < e; ++i) count *= p;
        ZPoly mod;
        for (i64 k = 0; k < count; ++k) {
            ZPoly cand(e + 1, 0);
            i64 kk = k;
            for (i64 i = 0; i < e; ++i) {
                cand[i] = kk % p;
                kk /= p;
            }
            cand[e] = 1;
            if (zp_irreducible(cand, p)) {
                mod = cand;
                break;
            }
        }
        if (mod.empty()) throw InvariantBreach("no irreducible modulus found");
        std::vector<FieldElem> m;
        for (i64 i = 0; i <= e; ++i) m.push_back(fp->from_int(mod[i]));
        f = Field::extension(fp, m);
    }
    auto& reg = Registry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.canonical[{p, e}] = f;
    return f;
}

// ----------------------------------------------------------------- ff_embed

namespace {

bool is_canonical(const FieldPtr& f) {
    auto& reg = Registry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.canonical.find({f->characteristic(), f->abs_degree()});
    return it != reg.canonical.end() && it->second.get() == f.get();
}

}  // namespace

EmbeddingMap ff_embed(const FieldPtr& sub, const FieldPtr& sup) {
    if (sub->characteristic() != sup->characteristic())
        throw std::invalid_argument("ff_embed: characteristic mismatch");
    if (sup->abs_degree() % sub->abs_degree() != 0)
        throw std::invalid_argument("ff_embed: subfield degree does not divide");
    {
        auto& reg = Registry::get();
        std::lock_guard<std::mutex> lock(reg.mu);
        auto it = reg.embeddings.find({sub.get(), sup.get()});
        if (it != reg.embeddings.end()) return it->second;
    }

    EmbeddingMap m;
    m.sub_ = sub;
    m.sup_ = sup;

    if (sub.get() == sup.get() || sub->same_field(*sup)) {
        for (i64 i = 0; i < sub->abs_degree(); ++i) {
            std::vector<i64> c(sup->abs_degree(), 0);
            c[i] = 1;
            m.basis_image_.push_back(sup->from_abs(c));
        }
        m.root_image_ = sup->structural_root();
    } else if (sub->is_prime_field()) {
        m.basis_image_.push_back(sup->one());
        m.root_image_ = sup->zero();
    } else {
        const i64 ratio = sup->abs_degree() / sub->abs_degree();
        if (is_canonical(sub) && is_canonical(sup) && !is_prime(ratio)) {
            // hop through the canonical intermediate one prime step below the top,
            // so embeddings along a repeatedly-extended tower compose exactly
            i64 spf = prime_factors(ratio)[0];
            FieldPtr mid = ff_make(sub->characteristic(), sup->abs_degree() / spf);
            EmbeddingMap lo = ff_embed(sub, mid);
            EmbeddingMap hi = ff_embed(mid, sup);
            m.root_image_ = hi.apply(lo.root_image());
            for (const auto& b : lo.basis_image_) m.basis_image_.push_back(hi.apply(b));
        } else {
            EmbeddingMap base_emb = ff_embed(sub->base(), sup);
            std::vector<FieldElem> mod_img;
            for (const auto& c : sub->modulus()) mod_img.push_back(base_emb.apply(c));
            // least root of the modulus, in coordinate order
            std::optional<FieldElem> root;
            for (i64 k = 0; k < sup->size(); ++k) {
                FieldElem x = sup->from_index(k);
                FieldElem v = sup->zero();
                for (i64 i = i64(mod_img.size()) - 1; i >= 0; --i) v = v * x + mod_img[i];
                if (v.is_zero()) {
                    root = x;
                    break;
                }
            }
            if (!root) throw InvariantBreach("ff_embed: modulus has no root in target");
            m.root_image_ = *root;
            // product basis: theta^j * (base basis_i)
            FieldElem rp = sup->one();
            for (i64 j = 0; j < sub->degree(); ++j) {
                for (const auto& b : base_emb.basis_image_) m.basis_image_.push_back(rp * b);
                rp = rp * *root;
            }
        }
    }

    auto& reg = Registry::get();
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.embeddings.emplace(std::make_pair(sub.get(), sup.get()), m);
    return m;
}

FieldElem EmbeddingMap::apply(const FieldElem& x) const {
    if (!x.field()->same_field(*sub_)) throw std::invalid_argument("embedding: element not in source");
    FieldElem acc = sup_->zero();
    for (size_t i = 0; i < basis_image_.size(); ++i) {
        i64 c = x.coords()[i];
        if (c == 0) continue;
        acc = acc + basis_image_[i] * sup_->from_int(c);
    }
    return acc;
}

std::optional<FieldElem> EmbeddingMap::preimage(const FieldElem& x) const {
    if (!x.field()->same_field(*sup_)) throw std::invalid_argument("embedding: element not in target");
    // solve sum c_i basis_image_i = x over F_p
    const i64 p = sub_->characteristic();
    const i64 rows = sub_->abs_degree(), cols = sup_->abs_degree();
    std::vector<std::vector<i64>> aug(rows, std::vector<i64>(cols + 0));
    for (i64 i = 0; i < rows; ++i) aug[i] = basis_image_[i].coords();
    std::vector<i64> rhs = x.coords();
    // Gaussian elimination on the transposed system (cols equations, rows unknowns)
    std::vector<std::vector<i64>> mat(cols, std::vector<i64>(rows + 1, 0));
    for (i64 j = 0; j < cols; ++j) {
        for (i64 i = 0; i < rows; ++i) mat[j][i] = aug[i][j];
        mat[j][rows] = rhs[j];
    }
    i64 r = 0;
    std::vector<i64> pivot_col(rows, -1);
    for (i64 c = 0; c < rows && r < cols; ++c) {
        i64 pr = -1;
        for (i64 i = r; i < cols; ++i)
            if (mat[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(mat[r], mat[pr]);
        i64 inv = mod_inv(mat[r][c], p);
        for (i64 k = 0; k <= rows; ++k) mat[r][k] = mat[r][k] * inv % p;
        for (i64 i = 0; i < cols; ++i) {
            if (i == r || mat[i][c] == 0) continue;
            i64 f = mat[i][c];
            for (i64 k = 0; k <= rows; ++k) mat[i][k] = mod_norm(mat[i][k] - f * mat[r][k], p);
        }
        pivot_col[c] = r;
        ++r;
    }
    std::vector<i64> sol(rows, 0);
    for (i64 c = 0; c < rows; ++c)
        if (pivot_col[c] >= 0) sol[c] = mat[pivot_col[c]][rows];
    // verify (handles inconsistent systems: x outside the image)
    for (i64 i = r; i < cols; ++i)
        if (mat[i][rows] != 0) return std::nullopt;
    FieldElem cand = sub_->from_abs(sol);
    if (!(apply(cand) == x)) return std::nullopt;
    return cand;
}

// ------------------------------------------------------------ derived utils

FieldElem ff_root_of_unity(const FieldPtr& F, i64 n) {
    if (!F->size_known()) throw std::invalid_argument("ff_root_of_unity: field too large");
    if (n < 1 || (F->size() - 1) % n != 0)
        throw std::invalid_argument("ff_root_of_unity: n does not divide |F|-1");
    return F->generator().pow((F->size() - 1) / n);
}

i64 ff_power_class(const FieldElem& x, i64 n) {
    if (x.is_zero()) throw std::invalid_argument("ff_power_class: zero element");
    const auto& F = x.field();
    if (!F->size_known()) throw std::invalid_argument("ff_power_class: field too large");
    if (n < 1 || (F->size() - 1) % n != 0)
        throw std::invalid_argument("ff_power_class: n does not divide |F|-1");
    return F->dlog(x) % n;
}

FieldElem ff_norm(const EmbeddingMap& emb, const FieldElem& x) {
    if (x.is_zero()) return emb.sup()->zero();
    i64 h = (emb.sup()->size() - 1) / (emb.sub()->size() - 1);
    return x.pow(h);
}

FieldElem ff_norm_solve(const EmbeddingMap& emb, const FieldElem& lambda) {
    if (lambda.is_zero()) throw std::invalid_argument("ff_norm_solve: lambda must be nonzero");
    if (!lambda.field()->same_field(*emb.sub()))
        throw std::invalid_argument("ff_norm_solve: lambda not in subfield");
    const auto& sup = emb.sup();
    i64 h = (sup->size() - 1) / (emb.sub()->size() - 1);
    i64 d = sup->dlog(emb.apply(lambda));
    if (d % h != 0) throw InvariantBreach("ff_norm_solve: norm equation unexpectedly unsolvable");
    return sup->generator().pow(d / h);
}

FieldElem ff_normal_element(const EmbeddingMap& emb) {
    const auto& sub = emb.sub();
    const auto& sup = emb.sup();
    const i64 n = sup->abs_degree() / sub->abs_degree();
    if (n == 1) return sup->one();
    const i64 p = sup->characteristic();
    const i64 q = sub->size();
    const i64 cols = sup->abs_degree();
    for (i64 k = 1; k < sup->size(); ++k) {
        FieldElem alpha = sup->from_index(k);
        // rows: coords of (sub basis element)*(conjugate); conjugates are
        // independent over sub iff the F_p span is all of sup
        std::vector<std::vector<i64>> rows;
        FieldElem conj = alpha;
        for (i64 i = 0; i < n; ++i) {
            for (i64 j = 0; j < sub->abs_degree(); ++j) {
                std::vector<i64> bc(sub->abs_degree(), 0);
                bc[j] = 1;
                rows.push_back((emb.apply(sub->from_abs(bc)) * conj).coords());
            }
            conj = conj.pow(q);
        }
        // F_p rank
        i64 rank = 0;
        for (i64 c = 0; c < cols && rank < i64(rows.size()); ++c) {
            i64 pr = -1;
            for (i64 i = rank; i < i64(rows.size()); ++i)
                if (rows[i][c] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(rows[rank], rows[pr]);
            i64 inv = mod_inv(rows[rank][c], p);
            for (i64 t = 0; t < cols; ++t) rows[rank][t] = rows[rank][t] * inv % p;
            for (i64 i = 0; i < i64(rows.size()); ++i) {
                if (i == rank || rows[i][c] == 0) continue;
                i64 f = rows[i][c];
                for (i64 t = 0; t < cols; ++t) rows[i][t] = mod_norm(rows[i][t] - f * rows[rank][t], p);
            }
            ++rank;
        }
        if (rank == cols) return alpha;
    }
    throw InvariantBreach("ff_normal_element: search exhausted");
}

}  // namespace csa
