#include "csa/linalg.hpp"

namespace csa {

namespace {

FieldPtr field_of(const Mat& a) {
    if (a.empty() || a[0].empty()) throw std::invalid_argument("empty matrix");
    return a[0][0].field();
}

// multiply a row by the lcm of denominators and divide by the gcd of
// numerators; cheap hygiene that keeps elimination entries small
void strip_content(Vec& row) {
    if (row.empty()) return;
    const auto& f = row[0].field();
    Poly den_lcm = Poly::one(f);
    for (const auto& x : row)
        if (!x.is_zero()) den_lcm = den_lcm * poly_divmod(x.den(), poly_gcd(den_lcm, x.den())).first;
    Poly num_gcd = Poly::zero(f);
    bool any = false;
    for (auto& x : row) {
        if (x.is_zero()) continue;
        x = x * RatFunc(den_lcm);
        num_gcd = any ? poly_gcd(num_gcd, x.num()) : x.num().monic();
        any = true;
    }
    if (!any || num_gcd.degree() < 1) return;
    RatFunc inv(Poly::one(f), num_gcd);
    for (auto& x : row)
        if (!x.is_zero()) x = x * inv;
}

// row-reduce [a | b] in place; returns pivot columns of a
std::vector<i64> gauss(Mat& a, i64 lead_cols) {
    std::vector<i64> pivots;
    i64 rows = i64(a.size());
    i64 r = 0;
    for (auto& row : a) strip_content(row);
    for (i64 c = 0; c < lead_cols && r < rows; ++c) {
        i64 pr = -1;
        for (i64 i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        RatFunc inv = a[r][c].inverse();
        for (auto& x : a[r]) x = x * inv;
        for (i64 i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            RatFunc f = a[i][c];
            for (size_t k = 0; k < a[i].size(); ++k) a[i][k] = a[i][k] - f * a[r][k];
            strip_content(a[i]);
        }
        // rescaling leaves pivot entries non-unit; extraction divides by them
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Mat mat_zero(const FieldPtr& f, i64 rows, i64 cols) {
    return Mat(rows, Vec(cols, RatFunc::zero(f)));
}

Mat mat_identity(const FieldPtr& f, i64 n) {
    Mat m = mat_zero(f, n, n);
    for (i64 i = 0; i < n; ++i) m[i][i] = RatFunc::one(f);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    const auto f = field_of(a);
    i64 n = i64(a.size()), k = i64(b.size()), m = i64(b[0].size());
    if (i64(a[0].size()) != k) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat c = mat_zero(f, n, m);
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (i64 l = 0; l < m; ++l) c[i][l] = c[i][l] + a[i][j] * b[j][l];
        }
    return c;
}

Vec mat_apply(const Mat& a, const Vec& x) {
    const auto f = field_of(a);
    Vec y(a.size(), RatFunc::zero(f));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] = y[i] + a[i][j] * x[j];
    return y;
}

Mat mat_transpose(const Mat& a) {
    const auto f = field_of(a);
    Mat t = mat_zero(f, i64(a[0].size()), i64(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

bool mat_equal(const Mat& a, const Mat& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

i64 mat_rank(Mat a) {
    if (a.empty() || a[0].empty()) return 0;
    return i64(gauss(a, i64(a[0].size())).size());
}

std::optional<Vec> mat_solve(Mat a, Vec b) {
    const auto f = field_of(a);
    const i64 rows = i64(a.size()), cols = i64(a[0].size());
    if (i64(b.size()) != rows) throw std::invalid_argument("mat_solve: shape mismatch");
    for (i64 i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = gauss(a, cols);
    // consistency: no pivot may appear in the augmented column
    for (i64 i = i64(pivots.size()); i < rows; ++i)
        if (!a[i][cols].is_zero()) return std::nullopt;
    Vec x(cols, RatFunc::zero(f));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols] / a[r][pivots[r]];
    return x;
}

std::vector<Vec> mat_right_kernel(Mat a) {
    const auto f = field_of(a);
    const i64 cols = i64(a[0].size());
    auto pivots = gauss(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (i64 c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (i64 free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols, RatFunc::zero(f));
        v[free] = RatFunc::one(f);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -(a[r][free] / a[r][pivots[r]]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Mat> mat_inverse(const Mat& a) {
    const auto f = field_of(a);
    const i64 n = i64(a.size());
    if (i64(a[0].size()) != n) throw std::invalid_argument("mat_inverse: square matrix required");
    Mat aug = a;
    for (i64 i = 0; i < n; ++i) {
        Mat id = mat_identity(f, n);
        aug[i].insert(aug[i].end(), id[i].begin(), id[i].end());
    }
    auto pivots = gauss(aug, n);
    if (i64(pivots.size()) != n) return std::nullopt;
    Mat inv = mat_zero(f, n, n);
    for (i64 r = 0; r < n; ++r) {
        RatFunc d = aug[r][pivots[r]];
        for (i64 j = 0; j < n; ++j) inv[pivots[r]][j] = aug[r][n + j] / d;
    }
    return inv;
}

std::optional<Mat> coords_in_span(const Mat& basis, const Mat& targets) {
    // solve basis^T c = target^T columnwise
    Mat bt = mat_transpose(basis);
    Mat out;
    for (const auto& tgt : targets) {
        auto sol = mat_solve(bt, tgt);
        if (!sol) return std::nullopt;
        out.push_back(*sol);
    }
    return out;
}

}  // namespace csa
