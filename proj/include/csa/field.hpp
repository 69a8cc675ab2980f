#ifndef CSA_FIELD_HPP
#define CSA_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csa {

using i64 = std::int64_t;

/// Recoverable randomized-search exhaustion (callers may retry with a fresh seed).
class SamplingError : public std::runtime_error {
   public:
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical postcondition that can only fail through an internal bug.
class InvariantBreach : public std::logic_error {
   public:
    explicit InvariantBreach(const std::string& what) : std::logic_error(what) {}
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of a finite field, held as absolute coordinates over the prime field.
///
/// The coordinate basis is the product basis of the construction tower
/// (powers of each level's structural root), so the vector length always
/// equals the absolute extension degree.
class FieldElem {
   public:
    FieldElem() = default;
    FieldElem(FieldPtr fld, std::vector<i64> abs_coords);

    const FieldPtr& field() const { return fld_; }
    const std::vector<i64>& coords() const { return c_; }
    bool valid() const { return fld_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem inverse() const;
    FieldElem pow(i64 k) const;  // negative exponents allowed for nonzero elements
    FieldElem frobenius(i64 p_power) const;  // x -> x^(p^p_power)

    i64 mul_order() const;  // order in the multiplicative group; error on zero

    std::string str() const;  // polynomial in w over F_p

   private:
    FieldPtr fld_;
    std::vector<i64> c_;
};

/// A finite field F_{p^e}, either the prime field or an extension of another
/// Field by a monic irreducible modulus over it.  Instances are immutable and
/// deduplicated through a process-wide registry, so identical constructions
/// share one object.
class Field : public std::enable_shared_from_this<Field> {
   public:
    /// Discrete-log (and generator-search) machinery is limited to this size.
    static constexpr i64 kMaxSize = i64(1) << 20;
    /// Sentinel for |F| beyond the i64 range (residue fields of high-degree
    /// places); plain arithmetic still works there.
    static constexpr i64 kSizeOverflow = -1;

    bool size_known() const { return size_ > 0; }

    /// F_p.  p must be prime.
    static FieldPtr prime(i64 p);
    /// Extension of `base` by a monic irreducible `modulus` (coefficients in base,
    /// constant term first, leading 1 included).
    static FieldPtr extension(const FieldPtr& base, const std::vector<FieldElem>& modulus);

    i64 characteristic() const { return p_; }
    i64 size() const { return size_; }
    i64 degree() const { return deg_; }          // over the immediate base
    i64 abs_degree() const { return abs_deg_; }  // over F_p
    const FieldPtr& base() const { return base_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const std::vector<FieldElem>& modulus() const { return modulus_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(i64 k) const;  // image of the integer k (prime subfield)
    FieldElem from_abs(std::vector<i64> coords) const;
    /// Element with index k in coordinate order: k written base p, least
    /// significant digit = first coordinate.
    FieldElem from_index(i64 k) const;
    i64 index_of(const FieldElem& x) const;

    /// The fixed multiplicative generator: least primitive element in coordinate order.
    const FieldElem& generator() const;

    /// Structural root of the modulus (the element "t-bar" adjoined at this level).
    FieldElem structural_root() const;

    /// Discrete log base `generator()`; baby-step giant-step, |F| capped at kMaxSize.
    i64 dlog(const FieldElem& x) const;

    /// Distinct prime factors of |F|-1.
    const std::vector<i64>& unit_group_prime_factors() const;

    std::string str() const;  // GF(p^e; modulus=<poly in w over F_p>)

    bool same_field(const Field& o) const;

    // --- arithmetic on absolute coordinate vectors (used by FieldElem) ---
    std::vector<i64> add(const std::vector<i64>& a, const std::vector<i64>& b) const;
    std::vector<i64> sub(const std::vector<i64>& a, const std::vector<i64>& b) const;
    std::vector<i64> neg(const std::vector<i64>& a) const;
    std::vector<i64> mul(const std::vector<i64>& a, const std::vector<i64>& b) const;
    std::vector<i64> inv(const std::vector<i64>& a) const;

   private:
    Field() = default;

    FieldPtr base_;                    // null for F_p
    std::vector<FieldElem> modulus_;   // over base_, monic, constant term first
    i64 p_ = 0;
    i64 deg_ = 1;
    i64 abs_deg_ = 1;
    i64 size_ = 0;

    // lazily initialized, guarded by a registry-level mutex
    mutable std::optional<FieldElem> generator_;
    mutable std::vector<i64> unit_factors_;
    mutable std::vector<std::vector<i64>> baby_table_;  // dlog baby steps
    mutable i64 baby_m_ = 0;

    friend struct FieldRegistry;
};

/// Fixed homomorphic embedding of one field into another.  Chosen
/// deterministically (least root of the subfield modulus in coordinate
/// order); embeddings between ff_make fields are composed through canonical
/// intermediate hops so that towers built by repeated extension commute.
class EmbeddingMap {
   public:
    EmbeddingMap() = default;
    const FieldPtr& sub() const { return sub_; }
    const FieldPtr& sup() const { return sup_; }

    FieldElem apply(const FieldElem& x) const;
    /// Preimage under the embedding, if x lies in the image.
    std::optional<FieldElem> preimage(const FieldElem& x) const;
    bool contains(const FieldElem& x) const { return preimage(x).has_value(); }

    /// Image of the subfield's structural root.
    const FieldElem& root_image() const { return root_image_; }

   private:
    FieldPtr sub_, sup_;
    FieldElem root_image_;
    std::vector<FieldElem> basis_image_;  // images of sub's absolute basis
    friend EmbeddingMap ff_embed(const FieldPtr&, const FieldPtr&);
};

/// Deterministic field with the lexicographically least monic irreducible
/// modulus of degree e over F_p and the least primitive generator.
FieldPtr ff_make(i64 p, i64 e);

/// Deterministic embedding sub -> sup; degrees must divide, characteristics match.
EmbeddingMap ff_embed(const FieldPtr& sub, const FieldPtr& sup);

/// Primitive n-th root of unity: generator^((|F|-1)/n).  Requires n | |F|-1.
FieldElem ff_root_of_unity(const FieldPtr& F, i64 n);

/// Class of x in F*/(F*)^n relative to the fixed generator, in [0,n).
i64 ff_power_class(const FieldElem& x, i64 n);

/// Solve N_{sup|sub}(a) = lambda for a (finite-field norm; always solvable).
FieldElem ff_norm_solve(const EmbeddingMap& emb, const FieldElem& lambda);

/// Element of sup whose sub-conjugates form a normal basis of sup|sub.
FieldElem ff_normal_element(const EmbeddingMap& emb);

/// Norm of x from sup to the subfield of index given by the embedding.
FieldElem ff_norm(const EmbeddingMap& emb, const FieldElem& x);

bool is_prime(i64 n);
std::vector<i64> prime_factors(i64 n);  // distinct primes

}  // namespace csa

#endif
