#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "equiloci/complex3.hpp"

namespace equiloci {

namespace detail {
inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline double abs2_of(double x) { return x * x; }
inline double abs2_of(const Complex& z) { return std::norm(z); }
}  // namespace detail

/// Small dense dynamically sized matrix; everything in this project is at most a few
/// hundred rows by ~20 columns, so simplicity beats blocking.
template <class T>
class DMat {
  public:
    DMat() = default;
    DMat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, T{}) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    DMat<T> ctransposed() const {
        DMat<T> r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = detail::conj_of((*this)(i, j));
        return r;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RMat = DMat<double>;
using CMat = DMat<Complex>;

template <class T>
struct Svd {
    DMat<T> u;                  // m x n, columns orthonormal where sigma > 0
    std::vector<double> sigma;  // descending
    DMat<T> v;                  // n x n unitary
};

/// One-sided Jacobi SVD: A = U diag(sigma) V^H. Requires rows >= cols; callers with wide
/// matrices transpose first. Accuracy is ample for the 1e-9..1e-12 tolerances used here.
template <class T>
Svd<T> svd_jacobi(DMat<T> a) {
    const std::size_t m = a.rows(), n = a.cols();
    DMat<T> v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = T{1};

    const double eps = 1e-15;
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                T gamma{};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += detail::abs2_of(a(i, p));
                    beta += detail::abs2_of(a(i, q));
                    gamma += detail::conj_of(a(i, p)) * a(i, q);
                }
                const double g = std::abs(gamma);
                if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;

                const T omega = gamma / g;  // phase of the Gram off-diagonal
                const double tau = (beta - alpha) / (2.0 * g);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const T cw = detail::conj_of(omega);

                for (std::size_t i = 0; i < m; ++i) {
                    const T ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * (cw * aq);
                    a(i, q) = s * (omega * ap) + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const T vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * (cw * vq);
                    v(i, q) = s * (omega * vp) + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) s2 += detail::abs2_of(a(i, j));
        sigma[j] = std::sqrt(s2);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd<T> out;
    out.u = DMat<T>(m, n);
    out.v = DMat<T>(n, n);
    out.sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = sigma[src];
        const double inv = sigma[src] > 0 ? 1.0 / sigma[src] : 0.0;
        for (std::size_t i = 0; i < m; ++i) out.u(i, j) = a(i, src) * inv;
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    }
    return out;
}

/// SVD of an arbitrary-shape matrix. Wide inputs are padded with zero rows so that
/// the right factor V always carries the complete n x n basis (null space included).
template <class T>
Svd<T> svd_any(const DMat<T>& a) {
    if (a.rows() >= a.cols()) return svd_jacobi(a);
    DMat<T> padded(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) padded(i, j) = a(i, j);
    return svd_jacobi(padded);
}

/// Columns of V spanning the numerical kernel: sigma_j <= rtol * sigma_max.
/// For a matrix that is identically zero, the whole of V is returned.
template <class T>
std::vector<std::vector<T>> nullspace(const DMat<T>& a, double rtol) {
    Svd<T> s = svd_any(a);
    const std::size_t n = a.cols();
    const std::size_t nsig = s.sigma.size();
    const double smax = nsig ? s.sigma[0] : 0.0;
    std::vector<std::vector<T>> basis;
    for (std::size_t j = 0; j < n; ++j) {
        const double sj = j < nsig ? s.sigma[j] : 0.0;
        if (smax == 0.0 || sj <= rtol * smax) basis.push_back(s.v.column(j));
    }
    return basis;
}

template <class T>
std::size_t numeric_rank(const DMat<T>& a, double rtol) {
    Svd<T> s = svd_any(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    std::size_t r = 0;
    const std::size_t lim = std::min(a.rows(), a.cols());
    for (std::size_t j = 0; j < lim && j < s.sigma.size(); ++j)
        if (s.sigma[j] > rtol * smax && smax > 0.0) ++r;
    return r;
}

/// Minimum-norm least-squares solve via the SVD.
template <class T>
std::vector<T> lstsq(const DMat<T>& a, const std::vector<T>& b, double rtol = 1e-12) {
    Svd<T> s = svd_any(a);
    const std::size_t n = a.cols();
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    std::vector<T> x(n, T{});
    const std::size_t k = std::min(std::min(a.rows(), a.cols()), s.sigma.size());
    for (std::size_t j = 0; j < k; ++j) {
        if (smax == 0.0 || s.sigma[j] <= rtol * smax) continue;
        T uj_b{};
        for (std::size_t i = 0; i < a.rows(); ++i) uj_b += detail::conj_of(s.u(i, j)) * b[i];
        const T coef = uj_b * (1.0 / s.sigma[j]);
        for (std::size_t i = 0; i < n; ++i) x[i] += s.v(i, j) * coef;
    }
    return x;
}

/// Orthonormalize the columns span of a real matrix (modified Gram-Schmidt, two passes).
/// Returns a matrix whose columns are an orthonormal basis of the column space.
RMat orthonormal_columns(const RMat& a, double rtol = 1e-12);

/// Principal angles between equal-dimension real subspaces given by spanning columns.
/// Returns the largest principal angle (radians); throws nothing, returns pi for dim mismatch.
double subspace_max_angle(const RMat& span1, const RMat& span2);

}  // namespace equiloci
