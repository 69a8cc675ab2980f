#ifndef CSA_IDEMPOTENTS_HPP
#define CSA_IDEMPOTENTS_HPP

#include "csa/invariants.hpp"
#include "csa/ore.hpp"

namespace csa {

/// A normal element of K over the fixed field of sigma: its sigma-conjugates
/// form a K^sigma-basis of K.  Deterministic search with the conjugate-matrix
/// invertibility test.
RatFunc normal_element(const FieldAut& sigma);

/// Coordinates of K over K^sigma with respect to a fixed basis.  Membership
/// and coordinates are computed through the Galois matrix (sigma^j(v_i)), so
/// no separate representation of the fixed field is needed.
class FixedFieldBasis {
   public:
    static FixedFieldBasis natural(const AutPtr& sigma);
    static FixedFieldBasis from_basis(const AutPtr& sigma, std::vector<RatFunc> basis);

    const AutPtr& aut() const { return sigma_; }
    const std::vector<RatFunc>& basis() const { return basis_; }

    /// Coordinates of z in the basis; entries lie in the fixed field.
    Vec coords(const RatFunc& z) const;
    RatFunc combine(const Vec& c) const;

   private:
    AutPtr sigma_;
    std::vector<RatFunc> basis_;
    Mat galois_inv_;  // inverse of (sigma^j(v_i))_{j,i}
};

/// Coordinates of a cyclic algebra over the fixed field, basis {v_r x^j}
/// with index j*n + r; linear maps use the row-vector convention.
class AlgebraCoords {
   public:
    explicit AlgebraCoords(AlgPtr alg);

    const AlgPtr& algebra() const { return alg_; }
    i64 dim() const { return alg_->n() * alg_->n(); }

    Vec coords(const AlgElem& u) const;
    AlgElem from_coords(const Vec& c) const;
    AlgElem basis_elem(i64 e) const;

    Mat left_mul_op(const AlgElem& a) const;   // row e: coords(a * basis_e)
    Mat right_mul_op(const AlgElem& a) const;  // row e: coords(basis_e * a)

   private:
    AlgPtr alg_;
    FixedFieldBasis kb_;
};

/// Explicit isomorphism A = K[x;sigma]/(x^n - lambda) -> M_n(K^sigma) built
/// from a norm solution N(mu) = lambda: the simple module is K with x acting
/// semilinearly by r -> sigma(r) mu.
class MatRep {
   public:
    MatRep(AlgPtr alg, RatFunc mu);

    const AlgPtr& algebra() const { return alg_; }
    const RatFunc& mu() const { return mu_; }

    /// n x n matrix over the fixed field (entries represented inside K).
    Mat rep(const AlgElem& u) const;
    /// Inverse of rep; the argument must have fixed-field entries.
    AlgElem unrep(const Mat& m) const;

   private:
    AlgPtr alg_;
    RatFunc mu_;
    FixedFieldBasis module_basis_;
    Mat rep_rows_;      // row e: flattened rep of the e-th algebra basis element
    AlgebraCoords ac_;
};

/// Same object, under the name the construction gives it.
MatRep split_iso_from_norm_solution(const AlgPtr& alg, const RatFunc& mu);

/// A presentation A = M_{n/m}(D): complete matrix units inside A plus an
/// F-basis of the corner division algebra D = e_00 A e_00 (first entry e_00).
struct Presentation {
    AlgPtr alg;
    i64 m = 1;
    std::vector<std::vector<AlgElem>> units;
    std::vector<AlgElem> corner_basis;

    i64 blocks() const { return alg->n() / m; }
    void validate() const;  // unit relations, completeness, corner dimension
};

/// Presentation of a split algebra (m = 1) through a matrix representation.
Presentation presentation_from_split(const MatRep& rep);

/// Presentation for the monomial family sigma(t) = a t, lambda = c t^{ne}:
/// the eigen-idempotents of u = rho t^{-em} x^m (u^{n/m} = 1) are primitive,
/// and powers of x shift them into complete matrix units.
Presentation monomial_presentation(const AlgPtr& alg);

/// Index of the cyclic algebra (lcm of the local invariant denominators),
/// computed through the symbol-algebra presentation over the fixed field.
/// Supports constant lambda and the monomial family.
i64 cyclic_algebra_index(const AlgPtr& alg);

/// Idempotent generating the left ideal A z of a non-invertible z != 0;
/// `primitive` reports whether dim_K(A z) equals the supplied index m.
struct IdempotentFromIdeal {
    AlgElem e;
    bool primitive;
};
IdempotentFromIdeal idempotent_from_zero_divisor(const AlgElem& z, i64 m);

/// e_0 together with its sigma^m-orbit: a complete orthogonal system of
/// primitive idempotents.
struct IdempotentSystem {
    AlgElem e0;
    i64 m = 1;
    i64 count = 0;

    std::vector<AlgElem> orbit() const;
    void verify() const;  // e_i e_j = delta_ij e_i, sum = 1, primitivity
};

/// The companion-conjugation construction: h with h^{-1} x^m h = s (s the
/// companion matrix of y^{n/m} - lambda placed through the presentation) and
/// e_0 = h e_00 h^{-1}.  Requires y^{n/m} - lambda irreducible over the fixed
/// field, i.e. lambda not an r-th power there for r | n.
IdempotentSystem orthogonal_idempotent_system(const Presentation& pres);

/// beta such that x - beta generates a maximal left ideal containing A' e,
/// by diagonalizing e through the representation, flipping all but one zero
/// diagonal slot, and intersecting with the span of {1, x} over M.
RatFunc lemma_beta(const MatRep& rep, const AlgElem& e);

}  // namespace csa

#endif
