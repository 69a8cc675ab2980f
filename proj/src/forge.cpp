#include "csa/forge.hpp"

#include <functional>
#include <numeric>

namespace csa {

// ------------------------------------------------------------ InvariantSpec

i64 InvariantSpec::degree() const {
    i64 l = infinity.den;
    for (const auto& [p, h] : finite) l = lcm_i64(l, h.den);
    return l;
}

void InvariantSpec::validate() const {
    HasseInv s = infinity;
    for (size_t i = 0; i < finite.size(); ++i) {
        if (finite[i].first.is_infinity())
            throw std::invalid_argument("invariant spec: infinity listed among finite places");
        for (size_t j = i + 1; j < finite.size(); ++j)
            if (finite[i].first == finite[j].first)
                throw std::invalid_argument("invariant spec: repeated place");
        s = s + finite[i].second;
    }
    if (!s.is_zero())
        throw std::invalid_argument("invariant spec: invariants do not sum to an integer");
}

InvariantProfile InvariantSpec::as_profile(const FieldPtr& f) const {
    std::map<Place, HasseInv> m;
    for (const auto& [p, h] : finite)
        if (!h.is_zero()) m.emplace(p, h);
    if (!infinity.is_zero()) m.emplace(Place::infinity(f), infinity);
    return InvariantProfile(std::move(m));
}

// --------------------------------------------------------- build_quaternion

namespace {

i64 inverse_mod(i64 a, i64 n) {
    a = ((a % n) + n) % n;
    for (i64 x = 1; x < n; ++x)
        if (a * x % n == 1) return x;
    throw std::invalid_argument("inverse_mod: not invertible");
}

// nonsquare lift in the residue field at f
Poly nonsquare_residue(const Place& f) {
    ResidueField k(f);
    return k.lift(k.field()->generator());
}

constexpr int kSamplingBlocks = 8;  // fresh-seed re-invocations on exhaustion

Poly sample_with_retries(const Poly& B, const Poly& F, const FieldElem& mu, i64 deg_target,
                         i64 deg_mod, Rng& rng) {
    for (int block = 0;; ++block) {
        try {
            Rng child = rng.fork();
            return sample_irreducible_congruent(B, F, mu, deg_target, deg_mod, child);
        } catch (const SamplingError&) {
            if (block + 1 >= kSamplingBlocks) throw;
        }
    }
}

}  // namespace

std::pair<Poly, Poly> build_quaternion(const std::vector<Place>& S, const FieldPtr& Fq, Rng& rng) {
    if (Fq->characteristic() == 2)
        throw std::invalid_argument("build_quaternion: odd q required");
    if (S.size() % 2 != 0)
        throw std::invalid_argument("build_quaternion: the cardinality of S must be even");
    bool has_inf = false;
    std::vector<Place> fin;
    for (const auto& v : S) {
        for (const auto& w : fin)
            if (w == v) throw std::invalid_argument("build_quaternion: repeated place");
        if (v.is_infinity()) {
            if (has_inf) throw std::invalid_argument("build_quaternion: repeated place");
            has_inf = true;
        } else {
            if (!v.poly().field()->same_field(*Fq))
                throw std::invalid_argument("build_quaternion: place over wrong field");
            fin.push_back(v);
        }
    }
    if (S.empty()) return {Poly::one(Fq), Poly::one(Fq)};

    Poly F = Poly::one(Fq);
    for (const auto& v : fin) F = F * v.poly();
    const i64 d = F.degree();

    // leading coefficient mu, degree parity eps of u, and the constant lambda
    FieldElem mu = Fq->one();
    FieldElem lambda = Fq->one();
    int eps;
    if (!has_inf) {
        eps = int(d % 2);  // deg a = 5d + eps even
    } else if (d % 2 == 1) {
        eps = 1;  // deg a even, nonsquare leading coefficient
        mu = Fq->generator();
    } else {
        eps = 1;  // deg a odd, nonsquare lambda
        lambda = Fq->generator();
    }

    // residue classes: -u*lambda must be a nonsquare mod every f_i
    std::vector<std::pair<Poly, Poly>> congruences;
    for (const auto& v : fin) {
        ResidueField k(v);
        FieldElem ml = k.reduce(Poly::constant(-lambda));
        Poly alpha = (ff_power_class(ml, 2) == 0) ? nonsquare_residue(v) : Poly::one(Fq);
        congruences.push_back({alpha, v.poly()});
    }
    Poly B = poly_crt(congruences);
    Poly u = sample_with_retries(B, F, mu, 4 * d + eps, 2, rng);
    return {F * u, F * Poly::constant(lambda)};
}

// ------------------------------------------------------------- build_symbol

SymbolAlgebra build_symbol(const InvariantSpec& spec, const FieldPtr& Fq, Rng& rng) {
    spec.validate();
    const i64 n = spec.degree();
    if ((Fq->size() - 1) % n != 0)
        throw std::invalid_argument("build_symbol: lcm of denominators must divide q-1");
    FieldElem eps = n == 1 ? Fq->one() : ff_root_of_unity(Fq, n);
    if (spec.finite.empty() || n == 1) {
        // the sum condition forces every entry to zero: the split algebra
        SymbolAlgebra A(n, eps, RatFunc::one(Fq), RatFunc::one(Fq));
        return A;
    }
    for (const auto& [p, h] : spec.finite)
        if (!p.poly().field()->same_field(*Fq))
            throw std::invalid_argument("build_symbol: place over wrong field");

    Poly F = Poly::one(Fq);
    for (const auto& [p, h] : spec.finite) F = F * p.poly();
    const i64 l = F.degree() % n;

    // auxiliary place when gcd(deg F, n) > 1
    Poly g = Poly::one(Fq);
    bool case_b = std::gcd(F.degree(), n) != 1;
    if (case_b) {
        i64 dg = ((n + 1 - l) % n + n) % n;
        if (dg == 0) dg = n;
        bool found = false;
        for (int expand = 0; expand < 4 && !found; ++expand, dg += n) {
            for (i64 tries = 0; tries < 24 * dg; ++tries) {
                Poly cand = random_monic(Fq, dg, rng);
                if (!poly_irreducible(cand)) continue;
                bool clash = false;
                for (const auto& [p, h] : spec.finite)
                    if (cand == p.poly()) clash = true;
                if (clash) continue;
                g = cand;
                found = true;
                break;
            }
        }
        if (!found) throw SamplingError("build_symbol: no auxiliary irreducible found");
    }

    // congruence targets at the f_i, from the calibrated residue classes
    std::vector<std::pair<Poly, Poly>> congruences;
    for (const auto& [p, h] : spec.finite) {
        ResidueField k(p);
        i64 target = (h.num * (n / h.den)) % n;
        FieldElem eps_k = k.reduce(Poly::constant(eps));
        // inv = c * class(s mod f) / n, so class must be c^{-1} * target
        i64 c = [&] {
            // probe (lift of the residue generator, f): tame-symbol class 1,
            // so the measured invariant is the calibration constant itself
            SymbolAlgebra probe(n, eps, RatFunc(k.lift(k.field()->generator())),
                                RatFunc(p.poly()));
            HasseInv hp = symbol_local_invariant(probe, p);
            return hp.num * (n / hp.den) % n;
        }();
        i64 cls = inverse_mod(c, n) * target % n;
        congruences.push_back({k.lift(k.field()->generator().pow(cls)), p.poly()});
    }
    Poly modulus_product = F;
    if (case_b) {
        congruences.push_back({Poly::one(Fq), g});
        modulus_product = F * g;
    }
    Poly B = poly_crt(congruences);

    // degree and lambda at infinity
    const i64 r0 = (spec.infinity.num * (n / spec.infinity.den)) % n;
    const i64 l_eff = (F.degree() + g.degree()) % n;  // deg of the finite part of b
    i64 deg_target = r0 == 0 ? 0 : ((n - l_eff) % n + n) % n;
    Poly s = sample_with_retries(B, modulus_product, Fq->one(), deg_target, n, rng);
    const i64 D = s.degree();

    FieldElem lambda = Fq->one();
    if (r0 != 0) {
        const i64 E = F.degree() + g.degree();
        // class of the tame symbol at infinity: class((-1)^{DE}) + D*class(lambda)
        i64 c_inf = [&] {
            // probe (t, gen): tame symbol at infinity is gen^{-v(t)} = gen, class 1
            SymbolAlgebra probe(n, eps, RatFunc(Poly::monomial(Fq->one(), 1)),
                                RatFunc::constant(Fq->generator()));
            HasseInv hp = symbol_local_invariant(probe, Place::infinity(Fq));
            return hp.num * (n / hp.den) % n;
        }();
        i64 minus_one_cls = n == 1 ? 0 : ff_power_class(-Fq->one(), n);
        i64 rhs = (inverse_mod(c_inf, n) * r0) % n;
        if ((D * E) % 2 != 0) rhs = ((rhs - minus_one_cls) % n + n) % n;
        i64 lam_cls = inverse_mod(D % n, n) * rhs % n;
        lambda = Fq->generator().pow(lam_cls);
    }

    Poly b = F * g * Poly::constant(lambda);
    SymbolAlgebra A(n, eps, RatFunc(s), RatFunc(b));

    InvariantProfile want = spec.as_profile(Fq);
    InvariantProfile got = invariant_profile(A);
    if (!(got == want))
        throw InvariantBreach("build_symbol: constructed profile does not match the request");
    return A;
}

// ------------------------------------------------- structure constants

StructureConstants symbol_structure_constants(const SymbolAlgebra& A) {
    const auto& F = A.constants();
    const i64 n = A.n;
    const i64 dim = n * n;
    StructureConstants sc;
    sc.dim = dim;
    sc.gamma.assign(dim, std::vector<std::vector<RatFunc>>(dim, std::vector<RatFunc>(dim, RatFunc::zero(F))));
    sc.labels.resize(dim);
    auto idx = [&](i64 i, i64 j) { return i * n + j; };
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j)
            sc.labels[idx(i, j)] = "u^" + std::to_string(i) + "*v^" + std::to_string(j);
    // (u^{i1} v^{j1})(u^{i2} v^{j2}) = eps^{-j1 i2} a^{floor} b^{floor} u^{..} v^{..}
    for (i64 i1 = 0; i1 < n; ++i1)
        for (i64 j1 = 0; j1 < n; ++j1)
            for (i64 i2 = 0; i2 < n; ++i2)
                for (i64 j2 = 0; j2 < n; ++j2) {
                    RatFunc coef = RatFunc::constant(A.eps.pow(-j1 * i2));
                    if (i1 + i2 >= n) coef = coef * A.a;
                    if (j1 + j2 >= n) coef = coef * A.b;
                    sc.gamma[idx(i1, j1)][idx(i2, j2)][idx((i1 + i2) % n, (j1 + j2) % n)] = coef;
                }
    return sc;
}

namespace {

StructureConstants transform_constants(const StructureConstants& sc,
                                       const std::function<RatFunc(const RatFunc&)>& f) {
    StructureConstants out;
    out.dim = sc.dim;
    out.labels = sc.labels;
    out.gamma = sc.gamma;
    for (auto& plane : out.gamma)
        for (auto& row : plane)
            for (auto& x : row) x = f(x);
    return out;
}

}  // namespace

StructureConstants swap_infinity(const StructureConstants& sc, const FieldElem& c) {
    return transform_constants(sc, [&](const RatFunc& x) { return moebius_substitute(x, c); });
}

StructureConstants swap_infinity_inverse(const StructureConstants& sc, const FieldElem& c) {
    return transform_constants(sc, [&](const RatFunc& x) { return moebius_substitute_inverse(x, c); });
}

}  // namespace csa
