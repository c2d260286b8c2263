#include "equiloci/numeric.hpp"

namespace equiloci {

RMat orthonormal_columns(const RMat& a, double rtol) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<double>> q;
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> v = a.column(j);
        double nv0 = 0.0;
        for (double x : v) nv0 += x * x;
        scale = std::max(scale, std::sqrt(nv0));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : q) {
                double d = 0.0;
                for (std::size_t i = 0; i < m; ++i) d += e[i] * v[i];
                for (std::size_t i = 0; i < m; ++i) v[i] -= d * e[i];
            }
        }
        double nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        if (nv > rtol * (scale > 0 ? scale : 1.0)) {
            for (double& x : v) x /= nv;
            q.push_back(std::move(v));
        }
    }
    RMat out(m, q.size());
    for (std::size_t j = 0; j < q.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) out(i, j) = q[j][i];
    return out;
}

double subspace_max_angle(const RMat& span1, const RMat& span2) {
    RMat q1 = orthonormal_columns(span1);
    RMat q2 = orthonormal_columns(span2);
    if (q1.cols() != q2.cols() || q1.rows() != q2.rows()) return M_PI;
    const std::size_t k = q1.cols();
    if (k == 0) return 0.0;
    RMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double d = 0.0;
            for (std::size_t r = 0; r < q1.rows(); ++r) d += q1(r, i) * q2(r, j);
            m(i, j) = d;
        }
    Svd<double> s = svd_any(m);
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double c = std::clamp(s.sigma[j], 0.0, 1.0);
        worst = std::max(worst, std::acos(c));
    }
    return worst;
}

}  // namespace equiloci
