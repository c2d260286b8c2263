#include "equiloci/linear_family.hpp"

#include <algorithm>
#include <cmath>

namespace equiloci {

double DetForm::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < monomials.size(); ++m) {
        double term = coeffs[m];
        for (int v = 0; v < nvars; ++v)
            for (int e = 0; e < monomials[m][v]; ++e) term *= x[v];
        acc += term;
    }
    return acc;
}

double DetForm::max_abs() const {
    double r = 0.0;
    for (double c : coeffs) r = std::max(r, std::abs(c));
    return r;
}

namespace {

std::vector<std::array<int, 4>> degree3_monomials(int nvars) {
    std::vector<std::array<int, 4>> out;
    for (int a = 3; a >= 0; --a)
        for (int b = 3 - a; b >= 0; --b)
            for (int c = 3 - a - b; c >= 0; --c) {
                const int d = 3 - a - b - c;
                std::array<int, 4> e{a, b, c, d};
                bool ok = true;
                for (int v = nvars; v < 4; ++v)
                    if (e[v] != 0) ok = false;
                if (ok) out.push_back(e);
            }
    return out;
}

std::vector<Mat3> unit_basis(std::vector<Mat3> basis) {
    for (auto& h : basis) h = h * (1.0 / frobenius_norm(h));
    return basis;
}

double realified_min_sigma(const std::vector<Mat3>& basis) {
    const RMat m = realify_matrix_span(basis);
    Svd<double> s = svd_any(m);
    return s.sigma[std::min(m.rows(), m.cols()) - 1];
}

}  // namespace

DetForm det_form(const std::vector<Mat3>& basis) {
    const int n = int(basis.size());
    DetForm form;
    form.nvars = n;
    form.monomials = degree3_monomials(n);

    // every integer grid point in {-2..2}^n
    std::vector<std::vector<double>> nodes;
    std::vector<int> idx(n, 0);
    const int npts = 1;
    (void)npts;
    std::vector<double> levels{-2, -1, 0, 1, 2};
    std::vector<int> counter(n, 0);
    for (;;) {
        std::vector<double> x(n);
        for (int v = 0; v < n; ++v) x[v] = levels[counter[v]];
        nodes.push_back(x);
        int v = 0;
        for (; v < n; ++v) {
            if (++counter[v] < int(levels.size())) break;
            counter[v] = 0;
        }
        if (v == n) break;
    }

    RMat a(nodes.size(), form.monomials.size());
    std::vector<double> rhs(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t m = 0; m < form.monomials.size(); ++m) {
            double term = 1.0;
            for (int v = 0; v < n; ++v)
                for (int e = 0; e < form.monomials[m][v]; ++e) term *= nodes[i][v];
            a(i, m) = term;
        }
        Mat3 combo = Mat3::zero();
        for (int v = 0; v < n; ++v) combo = combo + basis[v] * nodes[i][v];
        rhs[i] = det(combo).real();  // det of a self-adjoint combination is real
    }
    form.coeffs = lstsq(a, rhs);
    return form;
}

LinearFamilyCheck is_linear_family(const std::vector<Mat3>& basis_raw) {
    if (basis_raw.empty()) fail(Err::DependentBasis, "empty basis");
    const std::vector<Mat3> basis = unit_basis(basis_raw);
    if (realified_min_sigma(basis) < 1e-8)
        fail(Err::DependentBasis, "basis is not real-linearly independent");
    LinearFamilyCheck out{false, det_form(basis)};
    out.linear = out.form.max_abs() <= 1e-9;
    return out;
}

LinearFamily LinearFamily::from_basis(std::vector<Mat3> basis) {
    for (const auto& h : basis) {
        if (!is_selfadjoint(h, 1e-9)) fail(Err::NotALinearFamily, "basis map not self-adjoint");
        if (std::abs(trace(h)) > 1e-9 * frobenius_norm(h))
            fail(Err::NotALinearFamily, "basis map has nonzero trace");
    }
    const LinearFamilyCheck chk = is_linear_family(basis);
    if (!chk.linear) fail(Err::NotALinearFamily, "determinant form does not vanish on the span");
    LinearFamily fam;
    fam.basis_ = unit_basis(std::move(basis));
    return fam;
}

Mat3 LinearFamily::at(const std::vector<double>& x) const {
    Mat3 h = Mat3::zero();
    for (std::size_t i = 0; i < basis_.size(); ++i) h = h + basis_[i] * x[i];
    return h;
}

bool transversal_at(const std::vector<Mat3>& maps_raw, const ProjectivePoint& p) {
    if (point_signature(p).tag == SignTag::Isotropic)
        fail(Err::IsotropicInput, "transversality is defined at non-isotropic points");
    const std::vector<Mat3> maps = unit_basis(maps_raw);
    for (const auto& h : maps)
        if (std::abs(inner(h * p.rep(), p.rep())) > 1e-8)
            fail(Err::NotOnAllBisectors, "point misses one of the bisectors");

    if (realified_min_sigma(maps) < 1e-8) return false;  // span dimension below n

    RMat stacked(6, maps.size());
    for (std::size_t j = 0; j < maps.size(); ++j) {
        const Vec3 hp = maps[j] * p.rep();
        for (int k = 0; k < 3; ++k) {
            stacked(2 * k, j) = hp[k].real();
            stacked(2 * k + 1, j) = hp[k].imag();
        }
    }
    Svd<double> s = svd_any(stacked);
    const std::size_t nd = std::min<std::size_t>(6, maps.size());
    return s.sigma[nd - 1] > 1e-8;
}

namespace {

double sigma_ratio_at(const LinearFamily& fam, const std::vector<double>& x) {
    const Mat3 h = fam.at(x);
    CMat a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = h(i, j);
    Svd<Complex> s = svd_jacobi(a);
    return s.sigma[0] > 0 ? s.sigma[1] / s.sigma[0] : 0.0;
}

std::vector<double> normalized_coords(std::vector<double> x) {
    double n = 0;
    for (double v : x) n += v * v;
    n = std::sqrt(n);
    for (double& v : x) v /= n;
    return x;
}

// deterministic direction sets over the unit sphere of the coefficient space
std::vector<std::vector<double>> direction_grid(std::size_t dim) {
    std::vector<std::vector<double>> dirs;
    if (dim == 2) {
        for (int k = 0; k < 720; ++k) {
            const double t = M_PI * k / 720.0;
            dirs.push_back({std::cos(t), std::sin(t)});
        }
    } else if (dim == 3) {
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int k = 0; k < 4000; ++k) {
            const double z = 1.0 - 2.0 * (k + 0.5) / 4000.0;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double t = 2.0 * M_PI * k / golden;
            dirs.push_back({r * std::cos(t), r * std::sin(t), z});
        }
    } else {
        Rng rng(0xD15C0u);
        for (int k = 0; k < 20000; ++k) {
            std::vector<double> x(dim);
            for (auto& v : x) v = rng.gaussian();
            dirs.push_back(normalized_coords(x));
        }
    }
    return dirs;
}

}  // namespace

std::vector<RankOneElement> rank1_elements(const LinearFamily& fam) {
    const std::size_t dim = fam.dim();
    std::vector<RankOneElement> found;
    for (const auto& dir : direction_grid(dim)) {
        if (sigma_ratio_at(fam, dir) > 2e-2) continue;
        // pattern-search polish on the coefficient sphere
        std::vector<double> x = dir;
        double best = sigma_ratio_at(fam, x);
        double step = 0.05;
        while (step > 1e-12) {
            bool improved = false;
            for (std::size_t v = 0; v < dim; ++v) {
                for (double sgn : {1.0, -1.0}) {
                    std::vector<double> cand = x;
                    cand[v] += sgn * step;
                    cand = normalized_coords(cand);
                    const double val = sigma_ratio_at(fam, cand);
                    if (val < best) {
                        best = val;
                        x = cand;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (best > 1e-8) continue;
        bool dup = false;
        for (const auto& prev : found) {
            double ip = 0;
            for (std::size_t v = 0; v < dim; ++v) ip += prev.coords[v] * x[v];
            if (std::abs(ip) > 1.0 - 1e-6) dup = true;
        }
        if (dup) continue;
        const Mat3 h = fam.at(x);
        Vec3 range = col(h, 0);
        for (std::size_t j = 1; j < 3; ++j)
            if (norm_euclid(col(h, j)) > norm_euclid(range)) range = col(h, j);
        RankOneElement el;
        el.coords = x;
        el.f0 = ProjectivePoint::from(range);
        el.sigma_ratio = best;
        found.push_back(el);
    }
    return found;
}

namespace {

// common kernel vector of the whole basis, if one exists
std::optional<Vec3> common_kernel(const std::vector<Mat3>& basis) {
    CMat stacked(3 * basis.size(), 3);
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) stacked(3 * b + i, j) = basis[b](i, j);
    Svd<Complex> s = svd_any(stacked);
    if (s.sigma[2] > 1e-9 * s.sigma[0]) return std::nullopt;
    auto v = s.v.column(2);
    return Vec3{v[0], v[1], v[2]};
}

}  // namespace

FocalEmbedding focal_embedding(const LinearFamily& fam, std::uint64_t seed) {
    if (common_kernel(fam.basis())) fail(Err::ConfocalFamily, "confocal family has no focal embedding");
    const std::size_t n = fam.dim();
    // unknowns: images f_i realified (6n); rows: h_i f_i = 0 and h_i f_j + h_j f_i = 0
    const std::size_t pairs = n * (n - 1) / 2;
    RMat sys(6 * (n + pairs), 6 * n);
    auto put_block = [&](std::size_t row, std::size_t colv, const Mat3& h) {
        // realified action of h on the complex unknown f_colv
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Complex z = h(i, j);
                sys(row + 2 * i, 6 * colv + 2 * j) += z.real();
                sys(row + 2 * i, 6 * colv + 2 * j + 1) += -z.imag();
                sys(row + 2 * i + 1, 6 * colv + 2 * j) += z.imag();
                sys(row + 2 * i + 1, 6 * colv + 2 * j + 1) += z.real();
            }
    };
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i, row += 6) put_block(row, i, fam.basis()[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, row += 6) {
            put_block(row, j, fam.basis()[i]);
            put_block(row, i, fam.basis()[j]);
        }

    Svd<double> s = svd_any(sys);
    const std::size_t cols = 6 * n;
    FocalEmbedding out;
    out.sigmas = s.sigma;
    // expect a 2-dimensional null space (complex scalings of one embedding)
    const double smax = s.sigma[0];
    std::size_t nulldim = 0;
    for (std::size_t j = 0; j < cols; ++j)
        if (s.sigma[j] <= 1e-7 * smax) ++nulldim;
    if (nulldim != 2)
        fail(Err::IllConditioned, "focal system null space is not two-dimensional");

    // seeded gauge inside the null plane, then deterministic normalization
    Rng rng(0xF0CA1ULL ^ seed);
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    auto v1 = s.v.column(cols - 2), v2 = s.v.column(cols - 1);
    std::vector<double> v(cols);
    for (std::size_t k = 0; k < cols; ++k) v[k] = std::cos(theta) * v1[k] + std::sin(theta) * v2[k];

    std::vector<Vec3> images(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k)
            images[i][k] = Complex(v[6 * i + 2 * k], v[6 * i + 2 * k + 1]);

    // normalize: ||f h_1|| = 1 with the phase of the largest coordinate real positive
    const double n1 = norm_euclid(images[0]);
    std::size_t kk = 0;
    double bestc = std::abs(images[0][0]);
    for (std::size_t k = 1; k < 3; ++k)
        if (std::abs(images[0][k]) > bestc) {
            bestc = std::abs(images[0][k]);
            kk = k;
        }
    const Complex phase = std::conj(images[0][kk]) / std::abs(images[0][kk]);
    for (auto& f : images) f = f * (phase / n1);

    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        defect = std::max(defect, norm_euclid(fam.basis()[i] * images[i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            defect = std::max(defect, norm_euclid(fam.basis()[i] * images[j] +
                                                  fam.basis()[j] * images[i]));
    out.images = images;
    out.max_defect = defect;
    return out;
}

const char* family_tag_name(FamilyTag t) {
    switch (t) {
        case FamilyTag::ConfocalLine: return "ConfocalLine";
        case FamilyTag::ConfocalNegative3: return "ConfocalNegative3";
        case FamilyTag::ConfocalNegative4: return "ConfocalNegative4";
        case FamilyTag::RPlaneFamily: return "RPlaneFamily";
        case FamilyTag::MaximalNonconfocalWS: return "MaximalNonconfocalWS";
        case FamilyTag::SliceGeodesicFamily: return "SliceGeodesicFamily";
        case FamilyTag::EuclideanFocusFamily: return "EuclideanFocusFamily";
        case FamilyTag::NonconfocalLine: return "NonconfocalLine";
    }
    return "?";
}

FamilyClass classify_family(const LinearFamily& fam) {
    FamilyClass out{};
    if (auto f0 = common_kernel(fam.basis())) {
        out.common_focus = ProjectivePoint::from(*f0);
        if (fam.dim() == 2) {
            out.tag = FamilyTag::ConfocalLine;
        } else if (fam.dim() == 3) {
            out.tag = FamilyTag::ConfocalNegative3;
        } else {
            out.tag = FamilyTag::ConfocalNegative4;
        }
        return out;
    }

    const FocalEmbedding fe = focal_embedding(fam);
    // complex rank of the images: 3 means C f W = V (R-plane case)
    CMat imgs(3, fam.dim());
    for (std::size_t j = 0; j < fam.dim(); ++j)
        for (int k = 0; k < 3; ++k) imgs(k, j) = fe.images[j][k];
    const std::size_t crank = numeric_rank(imgs, 1e-7);

    if (crank == 3) {
        out.tag = FamilyTag::RPlaneFamily;
        out.rplane_basis = fe.images;
        return out;
    }

    // U = C f W is a complex line; its polar point is the common-slice polar
    Svd<Complex> s = svd_any(imgs);
    const Vec3 u1{s.u(0, 0), s.u(1, 0), s.u(2, 0)};
    const Vec3 u2{s.u(0, 1), s.u(1, 1), s.u(2, 1)};
    const Vec3 polar =
        cross_bilinear(standard_form().j * equiloci::conj(u1), standard_form().j * equiloci::conj(u2));
    out.slice_polar = ProjectivePoint::from(polar);

    if (fam.dim() == 4) {
        out.tag = FamilyTag::MaximalNonconfocalWS;
        return out;
    }
    if (fam.dim() == 3) {
        const Signature sp = point_signature(*out.slice_polar);
        out.tag = sp.tag == SignTag::Isotropic ? FamilyTag::EuclideanFocusFamily
                                               : FamilyTag::SliceGeodesicFamily;
        return out;
    }

    // nonconfocal line: singular circle P(fW) and the geodesic cone through i*p
    out.tag = FamilyTag::NonconfocalLine;
    out.singular_circle = fe.images;
    Vec3 p = fam.basis()[0] * fe.images[1];
    if (norm_euclid(p) < 1e-10) p = fam.basis()[1] * fe.images[0] * (-1.0);
    out.cone_basis = {I * p * (1.0 / norm_euclid(p)), fe.images[0], fe.images[1]};
    return out;
}

std::optional<Vec3> project_to_base(const std::vector<Mat3>& maps_raw, Vec3 q, int budget) {
    const std::vector<Mat3> maps = unit_basis(maps_raw);
    const std::size_t n = maps.size();
    std::vector<Mat3> herms(n);
    for (std::size_t i = 0; i < n; ++i) herms[i] = hermitian_of_selfadjoint(maps[i]);

    auto residuals = [&](const Vec3& x) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = inner(maps[i] * x, x).real();
        return g;
    };
    auto norm_g = [](const std::vector<double>& g) {
        double v = 0;
        for (double x : g) v = std::max(v, std::abs(x));
        return v;
    };

    q = q / norm_euclid(q);
    auto g = residuals(q);
    for (int iter = 0; iter < budget; ++iter) {
        if (norm_g(g) <= 1e-12) break;
        RMat jac(n, 6);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3 hq = herms[i] * q;  // gradient of q^H H q is 2 * realified(H q)
            for (int k = 0; k < 3; ++k) {
                jac(i, 2 * k) = 2.0 * hq[k].real();
                jac(i, 2 * k + 1) = 2.0 * hq[k].imag();
            }
        }
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = -g[i];
        const auto step = lstsq(jac, rhs, 1e-10);
        double lambda = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 24; ++bt) {
            Vec3 cand = q;
            for (int k = 0; k < 3; ++k)
                cand[k] += lambda * Complex(step[2 * k], step[2 * k + 1]);
            if (norm_euclid(cand) < 1e-12) {
                lambda *= 0.5;
                continue;
            }
            cand = cand / norm_euclid(cand);
            auto gc = residuals(cand);
            if (norm_g(gc) < norm_g(g)) {
                q = cand;
                g = gc;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!moved) break;
    }
    if (norm_g(g) > 1e-9) return std::nullopt;
    return q;
}

std::vector<ProjectivePoint> base_sample(const LinearFamily& fam, int n, std::uint64_t seed) {
    Rng rng(0xBA5Eull ^ seed);
    std::vector<ProjectivePoint> out;
    const int max_attempts = 10 * n;
    for (int att = 0; att < max_attempts && int(out.size()) < n; ++att) {
        const Vec3 q0 = rng.gaussian_vec3();
        if (auto q = project_to_base(fam.basis(), q0)) out.push_back(ProjectivePoint::from(*q));
    }
    if (int(out.size()) < n)
        fail(Err::EmptyBaseRegion, "Newton projection could not populate the base");
    return out;
}

PencilReport giraud_pencil(const BisectorMap& b1, const BisectorMap& b2) {
    return giraud_pencil(b1.h(), b2.h());
}

PencilReport giraud_pencil(const Mat3& h1raw, const Mat3& h2raw) {
    // work on unit-norm maps for scale-invariant root accuracy; roots are mapped back
    // to the caller's scaling at the end
    const double n1 = frobenius_norm(h1raw), n2 = frobenius_norm(h2raw);
    const Mat3 h1 = h1raw * (1.0 / n1), h2 = h2raw * (1.0 / n2);
    {
        const RMat span = realify_matrix_span({h1, h2});
        Svd<double> sv = svd_any(span);
        if (sv.sigma[1] < 1e-8 * sv.sigma[0])
            fail(Err::DependentBasis, "pencil needs two independent maps");
    }
    // binary cubic by interpolation at five integer points
    const double pts[5][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
    RMat sys(5, 4);
    std::vector<double> rhs(5);
    for (int i = 0; i < 5; ++i) {
        const double x = pts[i][0], y = pts[i][1];
        sys(i, 0) = x * x * x;
        sys(i, 1) = x * x * y;
        sys(i, 2) = x * y * y;
        sys(i, 3) = y * y * y;
        rhs[i] = det(h1 * x + h2 * y).real();
    }
    const auto c = lstsq(sys, rhs);
    PencilReport out;
    out.cubic = {c[0], c[1], c[2], c[3]};

    const double hscale = std::max(frobenius_norm(h1), frobenius_norm(h2));
    double cmax = 0;
    for (double v : c) cmax = std::max(cmax, std::abs(v));
    if (cmax < 1e-9 * hscale * hscale * hscale)
        fail(Err::IsLinearFamily, "determinant vanishes on the whole pencil");

    // real projective roots as angles in [0, pi), Newton-polished on the circle;
    // near-zero leading coefficients are stripped first so roots at (1:0) appear once,
    // with their multiplicity carried by the number of strips
    std::vector<double> angles;
    {
        std::vector<Complex> coeffs{c[3], c[2], c[1], c[0]};  // in t = x / y
        int at_infinity = 0;
        while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-9 * cmax) {
            coeffs.pop_back();
            ++at_infinity;
        }
        auto roots = poly_roots(coeffs);
        for (const auto& r : roots)
            if (std::abs(r.imag()) < 1e-6 * (1.0 + std::abs(r)))
                angles.push_back(std::atan2(1.0, r.real()));  // (x:y) = (t:1)
        for (int k = 0; k < at_infinity; ++k) angles.push_back(0.0);  // (1:0)
    }
    auto form_at = [&](double t) {
        const double x = std::cos(t), y = std::sin(t);
        return ((c[0] * x + c[1] * y) * x + c[2] * y * y) * x + c[3] * y * y * y;
    };
    for (auto& a : angles) {
        for (int it = 0; it < 3; ++it) {
            const double h0 = 1e-7;
            const double d = (form_at(a + h0) - form_at(a - h0)) / (2 * h0);
            if (std::abs(d) < 1e-11 * cmax) break;  // multiple root: leave to merging
            a -= form_at(a) / d;
        }
        while (a < 0) a += M_PI;
        while (a >= M_PI) a -= M_PI;
    }
    std::sort(angles.begin(), angles.end());
    // merge roots closer than 1e-6 in the projective chart
    std::vector<std::pair<double, int>> merged;
    for (double a : angles) {
        if (!merged.empty() && a - merged.back().first < 1e-6)
            merged.back().second += 1;
        else
            merged.push_back({a, 1});
    }
    if (merged.size() >= 2) {
        // wrap-around merge between the first and last angle
        if (M_PI - merged.back().first + merged.front().first < 1e-6) {
            merged.front().second += merged.back().second;
            merged.pop_back();
        }
    }

    out.has_double_root = false;
    for (const auto& [a, mult] : merged) {
        PencilReport::Root r;
        // back to the caller's scaling: x_raw h1raw + y_raw h2raw = x h1 + y h2
        const double xr = std::cos(a) / n1, yr = std::sin(a) / n2;
        const double nn = std::sqrt(xr * xr + yr * yr);
        r.x = xr / nn;
        r.y = yr / nn;
        r.multiplicity = mult;
        r.member = h1raw * r.x + h2raw * r.y;
        if (mult >= 2) out.has_double_root = true;
        out.roots.push_back(r);
    }
    return out;
}

NontransversalDiagnosis nontransversal_diagnosis(const BisectorMap& b1, const BisectorMap& b2,
                                                 const ProjectivePoint& p) {
    if (point_signature(p).tag != SignTag::Negative)
        fail(Err::NonNegativePoint, "diagnosis point must be negative");
    if (p.same_as(b1.focus()) || p.same_as(b2.focus()))
        fail(Err::FocusInput, "diagnosis point must differ from the foci");
    if (!contains(b1, p, 1e-8) || !contains(b2, p, 1e-8))
        fail(Err::NotOnBisector, "diagnosis point must lie on both bisectors");

    NontransversalDiagnosis out{};
    if (transversal_at({b1.h(), b2.h()}, p)) {
        out.transversal = true;
        out.circle_residual = 0.0;
        return out;
    }
    out.transversal = false;
    LinearFamily line = LinearFamily::from_basis({b1.h(), b2.h()});
    const FocalEmbedding fe = focal_embedding(line);
    // p must sit on the singular circle P(fW)
    out.circle_residual =
        on_real_span({fe.images[0], fe.images[1]}, p.rep(), 1e-6) ? 0.0 : 1.0;
    out.line = std::move(line);
    return out;
}

}  // namespace equiloci
