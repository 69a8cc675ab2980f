#ifndef CSA_INVARIANTS_HPP
#define CSA_INVARIANTS_HPP

#include <map>

#include "csa/ratfunc.hpp"

namespace csa {

/// Element of Q/Z as a reduced fraction r/s with 0 <= r < s.
struct HasseInv {
    i64 num = 0;
    i64 den = 1;

    HasseInv() = default;
    HasseInv(i64 r, i64 s);  // reduces and normalizes mod 1

    bool is_zero() const { return num == 0; }
    HasseInv operator+(const HasseInv& o) const;
    HasseInv operator-() const;
    HasseInv scaled(i64 k) const;  // k * (r/s) mod 1
    bool operator==(const HasseInv& o) const { return num == o.num && den == o.den; }
    bool operator!=(const HasseInv& o) const { return !(*this == o); }

    std::string str() const;
    static HasseInv parse(const std::string& s);
};

i64 lcm_i64(i64 a, i64 b);

/// Symbol algebra (a,b; K, eps): generators u, v with u^n = a, v^n = b,
/// uv = eps vu over K = F_q(t).  eps must have multiplicative order exactly n.
struct SymbolAlgebra {
    i64 n = 0;
    FieldElem eps;
    RatFunc a, b;

    SymbolAlgebra() = default;
    SymbolAlgebra(i64 n_, FieldElem eps_, RatFunc a_, RatFunc b_);
    const FieldPtr& constants() const { return eps.field(); }
};

/// Map from places to nonzero local invariants; the entries of any genuine
/// central simple algebra sum to 0 in Q/Z.
class InvariantProfile {
   public:
    InvariantProfile() = default;
    explicit InvariantProfile(std::map<Place, HasseInv> entries);  // drops zeros

    const std::map<Place, HasseInv>& entries() const { return m_; }
    HasseInv at(const Place& v) const;  // zero if absent
    bool empty() const { return m_.empty(); }
    HasseInv sum() const;
    bool reciprocity_holds() const { return sum().is_zero(); }
    /// lcm of the denominators; this is the index of the algebra class.
    i64 index() const;

    bool operator==(const InvariantProfile& o) const { return m_ == o.m_; }

    std::string str() const;  // one "place -> r/s" line per entry, inf last

   private:
    std::map<Place, HasseInv> m_;
};

/// Solvability of a1 x^2 + a2 y^2 + a3 z^2 = 0 in the f-adic completion,
/// decided by valuation parities and a residue square test.
bool conic_solvable_finite(const Poly& a1, const Poly& a2, const Poly& a3, const Place& f);

/// Solvability in F_q((1/t)), decided by degree parities and leading coefficients.
bool conic_solvable_infinity(const Poly& a1, const Poly& a2, const Poly& a3);

/// Exact set of places where the quaternion algebra H(a,b) = (a,b;F_q(t),-1)
/// does not split.  Candidate places are the divisors of a and b plus infinity;
/// everything else is provably split.  Requires odd q.
std::vector<Place> quaternion_ramification(const RatFunc& a, const RatFunc& b);

/// Local invariant of the symbol algebra at a place, via the tame symbol
/// (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} and a once-per-field calibration of the
/// power-residue class against the unramified-extension invariant formula.
HasseInv symbol_local_invariant(const SymbolAlgebra& A, const Place& v);

/// Profile over all places dividing a, b and infinity; asserts reciprocity.
InvariantProfile invariant_profile(const SymbolAlgebra& A);

/// Places of potential ramification: distinct irreducible divisors of the
/// numerators and denominators of the inputs, plus infinity (last).
std::vector<Place> candidate_places(const std::vector<RatFunc>& xs);

}  // namespace csa

#endif
