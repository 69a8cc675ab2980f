#ifndef CSA_RATFUNC_HPP
#define CSA_RATFUNC_HPP

#include <compare>
#include <random>
#include <utility>
#include <variant>

#include "csa/field.hpp"

namespace csa {

/// Seeded random state, owned and passed explicitly by callers.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    i64 below(i64 n) { return i64(eng_() % std::uint64_t(n)); }
    /// Deterministically derived child stream.
    Rng fork() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ull); }

   private:
    std::mt19937_64 eng_;
};

/// Univariate polynomial over a finite field, variable `t`, constant term first.
/// No trailing zero coefficients; deg(0) = -1 sentinel, kept out of arithmetic
/// by precondition checks.
class Poly {
   public:
    Poly() = default;
    Poly(FieldPtr fld, std::vector<FieldElem> coeffs);
    static Poly zero(const FieldPtr& f);
    static Poly one(const FieldPtr& f);
    static Poly constant(const FieldElem& c);
    static Poly t(const FieldPtr& f);                      // the variable
    static Poly monomial(const FieldElem& c, i64 k);       // c * t^k
    static Poly from_ints(const FieldPtr& f, const std::vector<i64>& c);

    const FieldPtr& field() const { return fld_; }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    i64 degree() const { return i64(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_constant() const { return c_.size() <= 1; }
    FieldElem coeff(i64 i) const;  // zero-padded access
    FieldElem lc() const;          // leading coefficient; error on zero
    bool is_monic() const { return !is_zero() && lc().is_one(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const FieldElem& s) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly monic() const;
    FieldElem eval(const FieldElem& x) const;
    Poly map_coeffs(const EmbeddingMap& emb) const;
    /// Apply a coefficient-wise field map (e.g. a Frobenius power).
    template <class F>
    Poly transform(F&& f) const {
        std::vector<FieldElem> out;
        out.reserve(c_.size());
        for (const auto& e : c_) out.push_back(f(e));
        return Poly(fld_, std::move(out));
    }

    std::string str() const;

   private:
    FieldPtr fld_;
    std::vector<FieldElem> c_;
};

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic
Poly poly_mod(const Poly& a, const Poly& m);
Poly poly_powmod(const Poly& base, i64 e, const Poly& m);
Poly poly_crt(const std::vector<std::pair<Poly, Poly>>& residues);  // (residue, modulus)
bool poly_irreducible(const Poly& f);
/// Monic irreducible factors with multiplicities (Cantor-Zassenhaus; internally
/// seeded, deterministic across runs).
std::vector<std::pair<Poly, i64>> poly_factor(const Poly& f);
/// Uniformly random monic polynomial of the given degree.
Poly random_monic(const FieldPtr& f, i64 deg, Rng& rng);

/// Monic irreducible u' with u = mu*u' satisfying u = B (mod F), lc(u) = mu and
/// deg u = 4d+eps (d = deg F); retry budget 3(4d+eps) draws per the density bound.
Poly sample_irreducible_in_class(const Poly& B, const Poly& F, const FieldElem& mu, int eps,
                                 Rng& rng);
/// Generalization used by the symbol construction: deg u = smallest N >= 4d
/// with N = deg_target (mod deg_mod); same budget shape (3N draws).
Poly sample_irreducible_congruent(const Poly& B, const Poly& F, const FieldElem& mu,
                                  i64 deg_target, i64 deg_mod, Rng& rng);

/// Reduced rational function: denominator monic, gcd(num, den) = 1.
class RatFunc {
   public:
    RatFunc() = default;
    RatFunc(Poly num, Poly den);     // reduces to canonical form
    explicit RatFunc(Poly num);      // den = 1
    static RatFunc zero(const FieldPtr& f);
    static RatFunc one(const FieldPtr& f);
    static RatFunc constant(const FieldElem& c);
    static RatFunc t(const FieldPtr& f);
    static RatFunc from_ints(const FieldPtr& f, const std::vector<i64>& num,
                             const std::vector<i64>& den = {1});

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(i64 k) const;
    RatFunc map_coeffs(const EmbeddingMap& emb) const;
    template <class F>
    RatFunc transform(F&& f) const {
        return RatFunc(num_.transform(f), den_.transform(f));
    }

    std::string str() const;  // (num)/(den)

   private:
    Poly num_, den_;
};

/// A place of F_q(t): a monic irreducible polynomial or the place at infinity.
class Place {
   public:
    static Place finite(Poly f);  // verifies irreducibility, stores the certificate
    static Place infinity(FieldPtr f);

    bool is_infinity() const { return std::holds_alternative<Inf>(v_); }
    const Poly& poly() const;  // finite places only
    const FieldPtr& field() const { return fld_; }
    i64 degree() const { return is_infinity() ? 1 : poly().degree(); }

    bool operator==(const Place& o) const;
    bool operator!=(const Place& o) const { return !(*this == o); }
    /// Deterministic order: finite places by (degree, coordinate order), infinity last.
    bool operator<(const Place& o) const;

    std::string str() const;  // "finite:<poly>" or "inf"

   private:
    struct Inf {};
    std::variant<Poly, Inf> v_;
    FieldPtr fld_;
};

i64 valuation(const RatFunc& x, const Place& v);  // error on x = 0
i64 valuation(const Poly& x, const Poly& f);

/// Value of x at a place where valuation(x) = 0: residue in the residue field
/// (as a Poly mod f for finite places, leading-coefficient ratio at infinity).
FieldElem residue_at_infinity(const RatFunc& x);

/// Substitute t -> (a*t + b)/(c*t + d) and return the reduced result.
RatFunc moebius_substitute_matrix(const RatFunc& x, const FieldElem& a, const FieldElem& b,
                                  const FieldElem& c, const FieldElem& d);
/// The reparametrization s = 1/(t+c), i.e. t -> (1 - c*s)/s (result read in s).
RatFunc moebius_substitute(const RatFunc& x, const FieldElem& c);
/// Its inverse: s -> 1/(t+c).
RatFunc moebius_substitute_inverse(const RatFunc& x, const FieldElem& c);

/// F_q[t]/(f) presented as a Field, with reduction and lift maps.
class ResidueField {
   public:
    explicit ResidueField(const Place& finite_place);

    const FieldPtr& field() const { return fld_; }
    const Poly& modulus() const { return f_; }

    FieldElem reduce(const Poly& a) const;
    FieldElem reduce(const RatFunc& x) const;  // requires valuation >= 0 overall
    Poly lift(const FieldElem& x) const;

   private:
    Poly f_;
    FieldPtr fld_;
};

}  // namespace csa

#endif
