#ifndef CSA_ORE_HPP
#define CSA_ORE_HPP

#include <memory>

#include "csa/linalg.hpp"

namespace csa {

/// Automorphism of K = F_q(t) of finite order: a Frobenius power on the
/// coefficients composed with a Moebius substitution on t.  The declared
/// order is verified at construction.
class FieldAut {
   public:
    /// frob_p_power: coefficients map c -> c^(p^frob_p_power).
    /// moebius: invertible [[a,b],[c,d]] over the constants, t -> (a t + b)/(c t + d).
    static std::shared_ptr<const FieldAut> make(const FieldPtr& constants, i64 frob_p_power,
                                                const std::array<FieldElem, 4>& moebius,
                                                i64 claimed_order);
    /// The identity automorphism (order 1).
    static std::shared_ptr<const FieldAut> identity(const FieldPtr& constants);

    const FieldPtr& constants() const { return fld_; }
    i64 order() const { return order_; }
    i64 frob_power() const { return frob_; }
    const std::array<FieldElem, 4>& moebius() const { return m_; }

    RatFunc apply(const RatFunc& x) const;
    RatFunc apply_iter(const RatFunc& x, i64 k) const;  // k-th compositional power, k may be < 0
    FieldElem apply_const(const FieldElem& c) const;
    bool fixes(const RatFunc& x) const { return apply(x) == x; }

    bool same_aut(const FieldAut& o) const;

   private:
    FieldAut() = default;
    FieldPtr fld_;
    i64 frob_ = 0;
    std::array<FieldElem, 4> m_;
    i64 order_ = 1;
};

using AutPtr = std::shared_ptr<const FieldAut>;

/// Twisted norm N_j(a) = a sigma(a) ... sigma^{j-1}(a); N_0 = 1.
RatFunc norm_j(const FieldAut& sigma, const RatFunc& a, i64 j);

/// Skew polynomial over K with left coefficients: f = sum a_i x^i, x a = sigma(a) x.
class SkewPoly {
   public:
    SkewPoly() = default;
    SkewPoly(AutPtr aut, std::vector<RatFunc> coeffs);
    static SkewPoly zero(const AutPtr& aut);
    static SkewPoly one(const AutPtr& aut);
    static SkewPoly x(const AutPtr& aut);
    static SkewPoly constant(const AutPtr& aut, const RatFunc& c);
    static SkewPoly monomial(const AutPtr& aut, const RatFunc& c, i64 k);

    const AutPtr& aut() const { return aut_; }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    i64 degree() const { return i64(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    RatFunc coeff(i64 i) const;
    RatFunc lc() const;
    bool is_monic() const { return !is_zero() && lc().is_one(); }
    SkewPoly monic() const;  // left-multiply by lc^{-1}

    SkewPoly operator+(const SkewPoly& o) const;
    SkewPoly operator-(const SkewPoly& o) const;
    SkewPoly operator*(const SkewPoly& o) const;
    SkewPoly operator-() const;
    bool operator==(const SkewPoly& o) const;
    bool operator!=(const SkewPoly& o) const { return !(*this == o); }

    std::string str() const;  // a0 + a1*x + ...

   private:
    AutPtr aut_;
    std::vector<RatFunc> c_;
};

/// Right division: f = q*g + r with deg r < deg g.
std::pair<SkewPoly, SkewPoly> skew_divmod_right(const SkewPoly& f, const SkewPoly& g);
/// Greatest common right divisor, monic.
SkewPoly skew_gcrd(const SkewPoly& f, const SkewPoly& g);
/// Least common left multiple, monic; iterated extended right-Euclid.
SkewPoly skew_lclm(const std::vector<SkewPoly>& fs);
/// Remainder evaluation: sum f_j N_j(c) = remainder of f under division by x - c.
RatFunc eval_right(const SkewPoly& f, const RatFunc& c);

/// A = K[x;sigma]/(x^n - lambda): sigma of order n, lambda nonzero and sigma-fixed.
class CyclicAlgebra {
   public:
    static std::shared_ptr<const CyclicAlgebra> make(const AutPtr& sigma, i64 n,
                                                     const RatFunc& lambda);
    const AutPtr& sigma() const { return sigma_; }
    i64 n() const { return n_; }
    const RatFunc& lambda() const { return lambda_; }
    const FieldPtr& constants() const { return sigma_->constants(); }
    bool same_algebra(const CyclicAlgebra& o) const;

   private:
    CyclicAlgebra() = default;
    AutPtr sigma_;
    i64 n_ = 0;
    RatFunc lambda_;
};

using AlgPtr = std::shared_ptr<const CyclicAlgebra>;

/// Element of a cyclic algebra, as the coefficient vector (a_0, ..., a_{n-1}).
class AlgElem {
   public:
    AlgElem() = default;
    AlgElem(AlgPtr alg, std::vector<RatFunc> coeffs);  // length exactly n
    static AlgElem zero(const AlgPtr& a);
    static AlgElem one(const AlgPtr& a);
    static AlgElem x_power(const AlgPtr& a, i64 k);  // x^k for any integer k (x is a unit)
    static AlgElem from_skew(const AlgPtr& a, const SkewPoly& f);  // reduce mod x^n - lambda

    const AlgPtr& algebra() const { return alg_; }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator*(const AlgElem& o) const;
    AlgElem operator-() const;
    AlgElem scaled(const RatFunc& k) const;  // left scalar multiple
    bool operator==(const AlgElem& o) const;
    bool operator!=(const AlgElem& o) const { return !(*this == o); }

    /// Coefficientwise sigma^k; a ring automorphism of the algebra.
    AlgElem sigma_applied(i64 k = 1) const;
    i64 weight() const;  // number of nonzero coordinates
    SkewPoly lift() const;

    std::string str() const;

   private:
    AlgPtr alg_;
    std::vector<RatFunc> c_;
};

/// Matrix of right multiplication u -> u*z on the left K-basis {x^i}; row i
/// holds the coefficients of x^i * z.
Mat right_mul_matrix(const AlgElem& z);
/// K-dimension of the left ideal A*z.
i64 left_ideal_dim(const AlgElem& z);
/// Basis (as algebra elements) of the left ideal A*z.
std::vector<AlgElem> left_ideal_basis(const AlgElem& z);
bool is_unit(const AlgElem& z);
/// Inverse of a unit, by solving w*z = 1.
AlgElem unit_inverse(const AlgElem& z);

}  // namespace csa

#endif
