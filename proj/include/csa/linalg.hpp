#ifndef CSA_LINALG_HPP
#define CSA_LINALG_HPP

#include <optional>

#include "csa/ratfunc.hpp"

namespace csa {

/// Dense exact matrices over F_q(t).  Elimination clears denominators row-wise
/// and strips content so intermediate entries stay reduced polynomial ratios.
using Vec = std::vector<RatFunc>;
using Mat = std::vector<Vec>;

Mat mat_zero(const FieldPtr& f, i64 rows, i64 cols);
Mat mat_identity(const FieldPtr& f, i64 n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& x);
Mat mat_transpose(const Mat& a);
bool mat_equal(const Mat& a, const Mat& b);

i64 mat_rank(Mat a);
/// One solution of A x = b, if consistent.
std::optional<Vec> mat_solve(Mat a, Vec b);
/// Basis of the right kernel {x : A x = 0}.
std::vector<Vec> mat_right_kernel(Mat a);
std::optional<Mat> mat_inverse(const Mat& a);

/// Coordinates with respect to a spanning list: writes each of `targets` as a
/// combination of `basis` vectors (rows), or nullopt if any falls outside.
std::optional<Mat> coords_in_span(const Mat& basis, const Mat& targets);

}  // namespace csa

#endif
