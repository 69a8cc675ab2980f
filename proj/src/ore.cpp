#include "csa/ore.hpp"

#include <sstream>

namespace csa {

// ----------------------------------------------------------------- FieldAut

std::shared_ptr<const FieldAut> FieldAut::make(const FieldPtr& constants, i64 frob_p_power,
                                               const std::array<FieldElem, 4>& moebius,
                                               i64 claimed_order) {
    for (const auto& e : moebius)
        if (!e.field()->same_field(*constants))
            throw std::invalid_argument("aut_make: moebius entries over wrong field");
    if ((moebius[0] * moebius[3] - moebius[1] * moebius[2]).is_zero())
        throw std::invalid_argument("aut_make: moebius matrix must be invertible");
    auto a = std::shared_ptr<FieldAut>(new FieldAut());
    a->fld_ = constants;
    a->frob_ = ((frob_p_power % constants->abs_degree()) + constants->abs_degree()) %
               constants->abs_degree();
    a->m_ = moebius;
    // normalize the projective matrix: first nonzero entry becomes 1
    for (int i = 0; i < 4; ++i) {
        if (!a->m_[i].is_zero()) {
            FieldElem inv = a->m_[i].inverse();
            for (int j = 0; j < 4; ++j) a->m_[j] = a->m_[j] * inv;
            break;
        }
    }
    // operational order: iterate on t and on the constants generator
    RatFunc t = RatFunc::t(constants);
    FieldElem g = constants->generator();
    RatFunc tcur = t;
    FieldElem gcur = g;
    i64 order = 0;
    for (i64 k = 1; k <= claimed_order; ++k) {
        tcur = a->apply(tcur);
        gcur = a->apply_const(gcur);
        if (tcur == t && gcur == g) {
            order = k;
            break;
        }
    }
    if (order == 0 || order != claimed_order)
        throw std::invalid_argument("aut_make: automorphism order is not the claimed order");
    a->order_ = order;
    return a;
}

std::shared_ptr<const FieldAut> FieldAut::identity(const FieldPtr& constants) {
    std::array<FieldElem, 4> id{constants->one(), constants->zero(), constants->zero(),
                                constants->one()};
    return make(constants, 0, id, 1);
}

RatFunc FieldAut::apply(const RatFunc& x) const {
    RatFunc fr = x.transform([&](const FieldElem& c) { return c.frobenius(frob_); });
    if (m_[0].is_one() && m_[1].is_zero() && m_[2].is_zero() && m_[3].is_one()) return fr;
    return moebius_substitute_matrix(fr, m_[0], m_[1], m_[2], m_[3]);
}

RatFunc FieldAut::apply_iter(const RatFunc& x, i64 k) const {
    k = ((k % order_) + order_) % order_;
    RatFunc cur = x;
    for (i64 i = 0; i < k; ++i) cur = apply(cur);
    return cur;
}

FieldElem FieldAut::apply_const(const FieldElem& c) const { return c.frobenius(frob_); }

bool FieldAut::same_aut(const FieldAut& o) const {
    if (!fld_->same_field(*o.fld_) || frob_ != o.frob_) return false;
    for (int i = 0; i < 4; ++i)
        if (!(m_[i] == o.m_[i])) return false;
    return true;
}

RatFunc norm_j(const FieldAut& sigma, const RatFunc& a, i64 j) {
    if (j < 0) throw std::invalid_argument("norm_j: negative index");
    RatFunc acc = RatFunc::one(sigma.constants());
    RatFunc conj = a;
    for (i64 i = 0; i < j; ++i) {
        acc = acc * conj;
        conj = sigma.apply(conj);
    }
    return acc;
}

// ----------------------------------------------------------------- SkewPoly

SkewPoly::SkewPoly(AutPtr aut, std::vector<RatFunc> coeffs)
    : aut_(std::move(aut)), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (!e.field()->same_field(*aut_->constants()))
            throw std::invalid_argument("skew poly coefficient over wrong field");
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

SkewPoly SkewPoly::zero(const AutPtr& aut) { return SkewPoly(aut, {}); }
SkewPoly SkewPoly::one(const AutPtr& aut) { return SkewPoly(aut, {RatFunc::one(aut->constants())}); }
SkewPoly SkewPoly::x(const AutPtr& aut) {
    return SkewPoly(aut, {RatFunc::zero(aut->constants()), RatFunc::one(aut->constants())});
}
SkewPoly SkewPoly::constant(const AutPtr& aut, const RatFunc& c) { return SkewPoly(aut, {c}); }

SkewPoly SkewPoly::monomial(const AutPtr& aut, const RatFunc& c, i64 k) {
    std::vector<RatFunc> v(k + 1, RatFunc::zero(aut->constants()));
    v[k] = c;
    return SkewPoly(aut, std::move(v));
}

RatFunc SkewPoly::coeff(i64 i) const {
    if (i < 0 || i >= i64(c_.size())) return RatFunc::zero(aut_->constants());
    return c_[i];
}

RatFunc SkewPoly::lc() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero skew polynomial");
    return c_.back();
}

SkewPoly SkewPoly::monic() const {
    RatFunc s = lc().inverse();
    std::vector<RatFunc> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(s * e);
    return SkewPoly(aut_, std::move(v));
}

static void check_ring(const SkewPoly& a, const SkewPoly& b) {
    if (!a.aut()->same_aut(*b.aut()))
        throw std::invalid_argument("skew polynomial automorphism mismatch");
}

SkewPoly SkewPoly::operator+(const SkewPoly& o) const {
    check_ring(*this, o);
    std::vector<RatFunc> v(std::max(c_.size(), o.c_.size()), RatFunc::zero(aut_->constants()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return SkewPoly(aut_, std::move(v));
}

SkewPoly SkewPoly::operator-(const SkewPoly& o) const { return *this + (-o); }

SkewPoly SkewPoly::operator-() const {
    std::vector<RatFunc> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(-e);
    return SkewPoly(aut_, std::move(v));
}

SkewPoly SkewPoly::operator*(const SkewPoly& o) const {
    check_ring(*this, o);
    if (is_zero() || o.is_zero()) return zero(aut_);
    std::vector<RatFunc> v(c_.size() + o.c_.size() - 1, RatFunc::zero(aut_->constants()));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            v[i + j] = v[i + j] + c_[i] * aut_->apply_iter(o.c_[j], i64(i));
        }
    }
    return SkewPoly(aut_, std::move(v));
}

bool SkewPoly::operator==(const SkewPoly& o) const {
    return aut_->same_aut(*o.aut()) && c_ == o.c_;
}

std::string SkewPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].str();
        if (i == 1) os << "*x";
        if (i > 1) os << "*x^" << i;
    }
    return os.str();
}

std::pair<SkewPoly, SkewPoly> skew_divmod_right(const SkewPoly& f, const SkewPoly& g) {
    check_ring(f, g);
    if (g.is_zero()) throw std::invalid_argument("skew division by zero");
    const auto& aut = f.aut();
    SkewPoly q = SkewPoly::zero(aut), r = f;
    while (!r.is_zero() && r.degree() >= g.degree()) {
        i64 d = r.degree() - g.degree();
        RatFunc c = r.lc() / aut->apply_iter(g.lc(), d);
        SkewPoly term = SkewPoly::monomial(aut, c, d);
        q = q + term;
        r = r - term * g;
    }
    return {q, r};
}

SkewPoly skew_gcrd(const SkewPoly& f, const SkewPoly& g) {
    SkewPoly a = f, b = g;
    while (!b.is_zero()) {
        SkewPoly r = skew_divmod_right(a, b).second;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

namespace {

SkewPoly lclm2(const SkewPoly& f, const SkewPoly& g) {
    check_ring(f, g);
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("lclm of zero");
    const auto& aut = f.aut();
    if (f.degree() == 0) return g.monic();
    if (g.degree() == 0) return f.monic();
    // extended right Euclid tracking the cofactor of f: r_i = u_i f + v_i g
    SkewPoly r0 = f, r1 = g;
    SkewPoly u0 = SkewPoly::one(aut), u1 = SkewPoly::zero(aut);
    i64 gcrd_deg = -1;
    while (true) {
        auto [quot, r2] = skew_divmod_right(r0, r1);
        SkewPoly u2 = u0 - quot * u1;
        if (r2.is_zero()) {
            gcrd_deg = r1.degree();
            SkewPoly l = (u2 * f).monic();
            if (l.degree() != f.degree() + g.degree() - gcrd_deg)
                throw InvariantBreach("lclm degree mismatch");
            return l;
        }
        r0 = r1;
        r1 = r2;
        u0 = u1;
        u1 = u2;
    }
}

}  // namespace

SkewPoly skew_lclm(const std::vector<SkewPoly>& fs) {
    if (fs.empty()) throw std::invalid_argument("lclm of empty list");
    SkewPoly acc = fs[0];
    if (acc.is_zero()) throw std::invalid_argument("lclm of zero");
    acc = acc.monic();
    for (size_t i = 1; i < fs.size(); ++i) acc = lclm2(acc, fs[i]);
    return acc;
}

RatFunc eval_right(const SkewPoly& f, const RatFunc& c) {
    const auto& aut = f.aut();
    RatFunc acc = RatFunc::zero(aut->constants());
    RatFunc nj = RatFunc::one(aut->constants());  // N_j(c)
    RatFunc conj = c;
    for (i64 j = 0; j <= f.degree(); ++j) {
        if (!f.coeff(j).is_zero()) acc = acc + f.coeff(j) * nj;
        nj = nj * conj;
        conj = aut->apply(conj);
    }
    return acc;
}

// ------------------------------------------------------------ CyclicAlgebra

std::shared_ptr<const CyclicAlgebra> CyclicAlgebra::make(const AutPtr& sigma, i64 n,
                                                         const RatFunc& lambda) {
    if (n < 1) throw std::invalid_argument("cyclic algebra: n must be positive");
    if (sigma->order() != n)
        throw std::invalid_argument("cyclic algebra: sigma order mismatch");
    if (lambda.is_zero()) throw std::invalid_argument("cyclic algebra: lambda must be nonzero");
    if (!(sigma->apply(lambda) == lambda))
        throw std::invalid_argument("cyclic algebra: lambda is not sigma-fixed");
    auto a = std::shared_ptr<CyclicAlgebra>(new CyclicAlgebra());
    a->sigma_ = sigma;
    a->n_ = n;
    a->lambda_ = lambda;
    return a;
}

bool CyclicAlgebra::same_algebra(const CyclicAlgebra& o) const {
    return n_ == o.n_ && lambda_ == o.lambda_ && sigma_->same_aut(*o.sigma_);
}

// ---------------------------------------------------------------- AlgElem

AlgElem::AlgElem(AlgPtr alg, std::vector<RatFunc> coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (i64(c_.size()) != alg_->n()) throw std::invalid_argument("algebra element: wrong length");
}

AlgElem AlgElem::zero(const AlgPtr& a) {
    return AlgElem(a, std::vector<RatFunc>(a->n(), RatFunc::zero(a->constants())));
}

AlgElem AlgElem::one(const AlgPtr& a) {
    auto v = std::vector<RatFunc>(a->n(), RatFunc::zero(a->constants()));
    v[0] = RatFunc::one(a->constants());
    return AlgElem(a, std::move(v));
}

AlgElem AlgElem::x_power(const AlgPtr& a, i64 k) {
    const i64 n = a->n();
    i64 r = ((k % n) + n) % n;
    i64 q = (k - r) / n;
    auto v = std::vector<RatFunc>(n, RatFunc::zero(a->constants()));
    v[r] = a->lambda().pow(q);
    return AlgElem(a, std::move(v));
}

AlgElem AlgElem::from_skew(const AlgPtr& a, const SkewPoly& f) {
    if (!f.aut()->same_aut(*a->sigma()))
        throw std::invalid_argument("from_skew: automorphism mismatch");
    const i64 n = a->n();
    std::vector<RatFunc> v(n, RatFunc::zero(a->constants()));
    for (i64 i = 0; i <= f.degree(); ++i) {
        i64 r = i % n;
        i64 q = i / n;
        v[r] = v[r] + f.coeff(i) * a->lambda().pow(q);
    }
    return AlgElem(a, std::move(v));
}

bool AlgElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const RatFunc& x) { return x.is_zero(); });
}

bool AlgElem::is_one() const {
    if (!c_[0].is_one()) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

static void check_alg(const AlgElem& a, const AlgElem& b) {
    if (!a.algebra()->same_algebra(*b.algebra()))
        throw std::invalid_argument("algebra element mismatch");
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    check_alg(*this, o);
    std::vector<RatFunc> v(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] + o.c_[i];
    return AlgElem(alg_, std::move(v));
}

AlgElem AlgElem::operator-(const AlgElem& o) const { return *this + (-o); }

AlgElem AlgElem::operator-() const {
    std::vector<RatFunc> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(-e);
    return AlgElem(alg_, std::move(v));
}

AlgElem AlgElem::operator*(const AlgElem& o) const {
    check_alg(*this, o);
    const i64 n = alg_->n();
    const auto& sig = alg_->sigma();
    std::vector<RatFunc> conv(2 * n - 1, RatFunc::zero(alg_->constants()));
    for (i64 i = 0; i < n; ++i) {
        if (c_[i].is_zero()) continue;
        for (i64 j = 0; j < n; ++j) {
            if (o.c_[j].is_zero()) continue;
            conv[i + j] = conv[i + j] + c_[i] * sig->apply_iter(o.c_[j], i);
        }
    }
    std::vector<RatFunc> v(conv.begin(), conv.begin() + n);
    for (i64 k = n; k < 2 * n - 1; ++k) v[k - n] = v[k - n] + conv[k] * alg_->lambda();
    return AlgElem(alg_, std::move(v));
}

AlgElem AlgElem::scaled(const RatFunc& k) const {
    std::vector<RatFunc> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(k * e);
    return AlgElem(alg_, std::move(v));
}

bool AlgElem::operator==(const AlgElem& o) const {
    return alg_->same_algebra(*o.algebra()) && c_ == o.c_;
}

AlgElem AlgElem::sigma_applied(i64 k) const {
    std::vector<RatFunc> v;
    v.reserve(c_.size());
    for (const auto& e : c_) v.push_back(alg_->sigma()->apply_iter(e, k));
    return AlgElem(alg_, std::move(v));
}

i64 AlgElem::weight() const {
    i64 w = 0;
    for (const auto& e : c_)
        if (!e.is_zero()) ++w;
    return w;
}

SkewPoly AlgElem::lift() const { return SkewPoly(alg_->sigma(), c_); }

std::string AlgElem::str() const { return lift().str(); }

// ------------------------------------------------------------ ideal helpers

Mat right_mul_matrix(const AlgElem& z) {
    const auto& a = z.algebra();
    const i64 n = a->n();
    Mat m;
    for (i64 i = 0; i < n; ++i) m.push_back((AlgElem::x_power(a, i) * z).coeffs());
    return m;
}

i64 left_ideal_dim(const AlgElem& z) {
    if (z.is_zero()) return 0;
    return mat_rank(right_mul_matrix(z));
}

std::vector<AlgElem> left_ideal_basis(const AlgElem& z) {
    const auto& a = z.algebra();
    Mat m = right_mul_matrix(z);
    i64 r = mat_rank(m);
    // collect a subset of the spanning rows that stays independent
    std::vector<AlgElem> basis;
    i64 rank_so_far = 0;
    for (size_t i = 0; i < m.size() && rank_so_far < r; ++i) {
        Mat probe;
        for (const auto& b : basis) probe.push_back(b.coeffs());
        probe.push_back(m[i]);
        if (mat_rank(probe) > rank_so_far) {
            basis.push_back(AlgElem(a, m[i]));
            ++rank_so_far;
        }
    }
    return basis;
}

bool is_unit(const AlgElem& z) {
    if (z.is_zero()) return false;
    return left_ideal_dim(z) == z.algebra()->n();
}

AlgElem unit_inverse(const AlgElem& z) {
    const auto& a = z.algebra();
    Mat m = mat_transpose(right_mul_matrix(z));
    auto sol = mat_solve(m, AlgElem::one(a).coeffs());
    if (!sol) throw std::invalid_argument("unit_inverse: element is not a unit");
    AlgElem w(a, *sol);
    if (!(w * z).is_one() || !(z * w).is_one()) throw InvariantBreach("unit_inverse check failed");
    return w;
}

}  // namespace csa
