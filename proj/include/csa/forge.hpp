#ifndef CSA_FORGE_HPP
#define CSA_FORGE_HPP

#include "csa/invariants.hpp"

namespace csa {

/// Multiplication table of an algebra in a fixed basis: b_i b_j = sum_k gamma[i][j][k] b_k.
struct StructureConstants {
    i64 dim = 0;
    std::vector<std::vector<std::vector<RatFunc>>> gamma;
    std::vector<std::string> labels;

    /// Coefficient vector of b_i * b_j.
    const std::vector<RatFunc>& product_of_basis(i64 i, i64 j) const { return gamma[i][j]; }
};

/// Prescribed Hasse invariants: finite places with targets, plus the target at
/// infinity.  Valid when the places are distinct, the entries sum to 0 in Q/Z
/// and the lcm of the denominators is the requested degree n.
struct InvariantSpec {
    std::vector<std::pair<Place, HasseInv>> finite;
    HasseInv infinity;

    i64 degree() const;  // lcm of all denominators
    void validate() const;
    /// The profile this spec requests (zero entries dropped).
    InvariantProfile as_profile(const FieldPtr& f) const;
};

/// Quaternion algebra H(a,b) with ramification set exactly S (|S| even, q odd).
/// The empty set returns the split pair (1,1).
std::pair<Poly, Poly> build_quaternion(const std::vector<Place>& S, const FieldPtr& Fq, Rng& rng);

/// Symbol algebra whose invariant profile matches the spec exactly.
/// Requires n | q-1 for n the lcm of the spec denominators.
SymbolAlgebra build_symbol(const InvariantSpec& spec, const FieldPtr& Fq, Rng& rng);

/// Structure constants of the symbol algebra in the basis {u^i v^j}.
StructureConstants symbol_structure_constants(const SymbolAlgebra& A);

/// Rewrite every structure constant in the variable s = 1/(t+c); the finite
/// place t+c and infinity exchange roles.
StructureConstants swap_infinity(const StructureConstants& sc, const FieldElem& c);
/// The inverse rewrite t = 1/s - c; composing the two is the identity.
StructureConstants swap_infinity_inverse(const StructureConstants& sc, const FieldElem& c);

}  // namespace csa

#endif
