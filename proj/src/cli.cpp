#include "equiloci/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "equiloci/bisector.hpp"
#include "equiloci/equitant.hpp"
#include "equiloci/linear_family.hpp"

namespace equiloci {

using Json = nlohmann::ordered_json;

namespace {

Complex parse_complex(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SceneError(where + ": complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 parse_vec(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw SceneError(where + ": vectors are 3-arrays");
    return {parse_complex(j[0], where), parse_complex(j[1], where), parse_complex(j[2], where)};
}

Mat3 parse_mat(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw SceneError(where + ": matrices are 3x3 arrays");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const Vec3 row = parse_vec(j[i], where);
        for (int k = 0; k < 3; ++k) m(i, k) = row[k];
    }
    return m;
}

Json dump_complex(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json dump_vec(const Vec3& v) {
    return Json::array({dump_complex(v[0]), dump_complex(v[1]), dump_complex(v[2])});
}

Json dump_mat(const Mat3& m) {
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i)
        rows.push_back(Json::array({dump_complex(m(i, 0)), dump_complex(m(i, 1)), dump_complex(m(i, 2))}));
    return rows;
}

}  // namespace

Scene parse_scene(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw SceneError(std::string("scene is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SceneError("scene must be a JSON object");
    Scene s;
    for (const auto& [key, value] : j.items()) {
        if (key == "form") {
            s.form = parse_mat(value, "form");
        } else if (key == "points") {
            if (!value.is_object()) throw SceneError("points must be a name map");
            for (const auto& [name, v] : value.items()) s.points[name] = parse_vec(v, "points." + name);
        } else if (key == "bisectors") {
            if (!value.is_object()) throw SceneError("bisectors must be a name map");
            for (const auto& [name, v] : value.items())
                s.bisectors[name] = parse_mat(v, "bisectors." + name);
        } else if (key == "algebras") {
            if (!value.is_object()) throw SceneError("algebras must be a name map");
            for (const auto& [name, v] : value.items()) {
                const Json& tensor = v.is_object() && v.contains("c") ? v["c"] : v;
                if (v.is_object())
                    for (const auto& [tk, tv] : v.items()) {
                        (void)tv;
                        if (tk != "c") throw SceneError("algebras." + name + ": unknown key " + tk);
                    }
                if (!tensor.is_array() || tensor.size() != 3)
                    throw SceneError("algebras." + name + ": tensor is 3x3x3");
                Algebra3::Tensor c{};
                for (int i = 0; i < 3; ++i) {
                    if (!tensor[i].is_array() || tensor[i].size() != 3)
                        throw SceneError("algebras." + name + ": tensor is 3x3x3");
                    for (int jj = 0; jj < 3; ++jj) {
                        const Vec3 row = parse_vec(tensor[i][jj], "algebras." + name);
                        for (int k = 0; k < 3; ++k) c[i][jj][k] = row[k];
                    }
                }
                s.algebras[name] = c;
            }
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) throw SceneError("seed must be a nonnegative integer");
            s.seed = value.get<std::uint64_t>();
        } else {
            throw SceneError("unknown scene key: " + key);
        }
    }
    // only the canonical chart is supported; other ++- forms are a change of basis away
    const Mat3 want = Mat3::diag(1, 1, -1);
    if (frobenius_norm(s.form - want) > 1e-12)
        throw SceneError("form must be diag(1,1,-1); apply a change of basis upstream");
    return s;
}

std::string content_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Ctx {
    Scene scene;
    std::string digest;
    std::uint64_t seed = 0;
    double tol = 0.0;  // 0 = library defaults
    Json warnings = Json::array();
};

const Vec3& need_point(const Ctx& c, const std::string& name) {
    auto it = c.scene.points.find(name);
    if (it == c.scene.points.end()) throw SceneError("unknown point: " + name);
    return it->second;
}

const Mat3& need_bisector(const Ctx& c, const std::string& name) {
    auto it = c.scene.bisectors.find(name);
    if (it == c.scene.bisectors.end()) throw SceneError("unknown bisector: " + name);
    return it->second;
}

Json base_report(const Ctx& c, const std::string& command, const Json& args) {
    Json r;
    r["command"] = command;
    r["inputs"] = Json{{"scene_digest", c.digest}, {"args", args}};
    r["seed"] = c.seed;
    r["tolerances"] = Json{{"membership", c.tol > 0 ? c.tol : kTolMember},
                           {"signature", kTolSig},
                           {"rank", kTolRank}};
    r["warnings"] = c.warnings;
    return r;
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Json run_bisector(Ctx& c, const std::string& n1, const std::string& n2) {
    if (n1 == n2) throw SceneError("the two point names must differ");
    const auto p1 = ProjectivePoint::from(need_point(c, n1));
    const auto p2 = ProjectivePoint::from(need_point(c, n2));
    const BisectorMap b = bisector_from_points(p1, p2);
    const Geodesic spine = real_spine(b);

    Json out;
    out["h"] = dump_mat(b.h());
    out["focus"] = dump_vec(b.focus().rep());
    out["kind"] = kind_name(b.kind());
    out["real_spine"] = Json{{"w", dump_vec(spine.w)}, {"w_prime", dump_vec(spine.w_prime)}};
    Json slices = Json::array();
    Rng rng(c.seed);
    const double tol = c.tol > 0 ? c.tol : kTolMember;
    int made = 0;
    for (int tries = 0; tries < 64 && made < 3; ++tries) {
        const Vec3 x = random_point_on(b, rng);
        const auto q = ProjectivePoint::from(x);
        if (q.same_as(b.focus())) continue;
        const Slice s = slice_through(b, q);
        slices.push_back(Json{{"through", dump_vec(q.rep())},
                              {"polar", dump_vec(s.polar.rep())},
                              {"on_bisector", contains(b, q, tol)}});
        ++made;
    }
    out["sample_slices"] = slices;
    return out;
}

Json run_family(Ctx& c, const std::vector<std::string>& names) {
    std::vector<Mat3> basis;
    for (const auto& n : names) basis.push_back(need_bisector(c, n));
    const LinearFamily fam = LinearFamily::from_basis(basis);
    const FamilyClass cls = classify_family(fam);
    Json out;
    out["dim"] = fam.dim();
    out["tag"] = family_tag_name(cls.tag);
    if (cls.common_focus) out["common_focus"] = dump_vec(cls.common_focus->rep());
    if (cls.slice_polar) out["slice_polar"] = dump_vec(cls.slice_polar->rep());
    if (!cls.rplane_basis.empty()) {
        Json arr = Json::array();
        for (const auto& v : cls.rplane_basis) arr.push_back(dump_vec(v));
        out["rplane_basis"] = arr;
    }
    if (!cls.singular_circle.empty()) {
        Json arr = Json::array();
        for (const auto& v : cls.singular_circle) arr.push_back(dump_vec(v));
        out["singular_circle"] = arr;
    }
    if (!cls.cone_basis.empty()) {
        Json arr = Json::array();
        for (const auto& v : cls.cone_basis) arr.push_back(dump_vec(v));
        out["cone_basis"] = arr;
    }
    return out;
}

Json run_giraud(Ctx& c, const std::vector<std::string>& point_names,
                const std::vector<std::string>& bisector_names) {
    PencilReport rep;
    if (point_names.size() == 3) {
        const Vec3 p1 = need_point(c, point_names[0]);
        const Vec3 p2 = need_point(c, point_names[1]);
        const Vec3 p3 = need_point(c, point_names[2]);
        auto proj = [](const Vec3& p) {
            return outer(p, p) * standard_form().j * (1.0 / inner(p, p).real());
        };
        rep = giraud_pencil(proj(p1) - proj(p2), proj(p2) - proj(p3));
    } else if (bisector_names.size() == 2) {
        const Mat3& h1 = need_bisector(c, bisector_names[0]);
        const Mat3& h2 = need_bisector(c, bisector_names[1]);
        (void)BisectorMap::from_matrix(h1);  // validates self-adjointness, trace, rank
        (void)BisectorMap::from_matrix(h2);
        rep = giraud_pencil(h1, h2);
    } else {
        throw SceneError("giraud needs --points A,B,C or --bisectors A,B");
    }
    Json out;
    out["cubic"] = Json::array({rep.cubic[0], rep.cubic[1], rep.cubic[2], rep.cubic[3]});
    Json roots = Json::array();
    for (const auto& r : rep.roots)
        roots.push_back(Json{{"x", r.x}, {"y", r.y}, {"multiplicity", r.multiplicity},
                             {"member", dump_mat(r.member)}});
    out["roots"] = roots;
    out["root_count"] = rep.roots.size();
    out["has_double_root"] = rep.has_double_root;
    return out;
}

Json run_algebra(Ctx& c, const std::string& name, int samples) {
    auto it = c.scene.algebras.find(name);
    if (it == c.scene.algebras.end()) throw SceneError("unknown algebra: " + name);
    const Algebra3 a(it->second);
    const DetCubic dc = det_cubic(a);
    Json out;
    Json coeffs = Json::array();
    for (const auto& z : dc.p.c) coeffs.push_back(dump_complex(z));
    out["cubic"] = coeffs;
    out["cubic_snapped"] = dc.snapped;
    if (dc.identically_zero) {
        out["type"] = cubic_type_name(CubicType::IdenticallyZero);
    } else {
        out["type"] = cubic_type_name(classify_cubic(dc.p).type);
    }
    const GenericityReport gen = is_generic(a, samples, c.seed);
    out["generic"] = gen.generic;
    if (gen.generic && !dc.identically_zero) {
        const ProjectivityReport pr = phi_projectivity_test(a, std::max(samples, 8), c.seed);
        out["phi_projective"] = pr.projective;
        out["phi_fit_residual"] = pr.max_residual;
    } else if (gen.generic) {
        out["phi_projective"] = true;  // sl2-like: phi is the identity on the whole plane
    }
    out["K_dim"] = multiplication_kernel(a).dimension;
    return out;
}

std::string format_csv(const TraceResult& tr) {
    std::ostringstream os;
    os << "s0,s1,t0,t1,x1_re,x1_im,x2_re,x2_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im,"
          "signature,distance_spread\n";
    char buf[64];
    auto put = [&](double v, bool last = false) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << (last ? "" : ",");
    };
    for (const auto& tp : tr.points) {
        put(tp.s0);
        put(tp.s1);
        put(tp.t0);
        put(tp.t1);
        put(tp.x1.real());
        put(tp.x1.imag());
        put(tp.x2.real());
        put(tp.x2.imag());
        for (int k = 0; k < 3; ++k) {
            put(tp.q[k].real());
            put(tp.q[k].imag());
        }
        os << sign_name(tp.signature) << ",";
        put(tp.distance_spread, true);
        os << "\n";
    }
    return os.str();
}

Json run_equitant(Ctx& c, const std::vector<std::string>& names, const std::string& sigma_name,
                  int trace_n, std::string* csv_out) {
    if (names.size() != 4) throw SceneError("equitant needs --points A,B,C,D");
    SignTag sigma = SignTag::Negative;
    if (sigma_name == "positive") sigma = SignTag::Positive;
    else if (sigma_name == "isotropic") sigma = SignTag::Isotropic;
    else if (sigma_name != "negative") throw SceneError("--sigma must be negative|positive|isotropic");

    std::array<Vec3, 4> pts{need_point(c, names[0]), need_point(c, names[1]),
                            need_point(c, names[2]), need_point(c, names[3])};
    const EquitantFamily fam = EquitantFamily::make(pts, sigma);
    const EquitantCase cs = classify_equitant(fam);
    const BaseBiquadratic r = base_biquadratic(fam);

    Json out;
    out["a"] = Json::array({fam.a()[0], fam.a()[1], fam.a()[2], fam.a()[3]});
    out["case"] = equitant_tag_name(cs.tag);
    if (cs.near_degenerate) {
        c.warnings.push_back(std::string("near-degenerate case: ") +
                             equitant_tag_name(*cs.near_degenerate));
    }
    out["r"] = Json::array({r.r00, r.r01, r.r10, r.r11});
    Json foci = Json::array();
    for (const auto& sf : cs.singular_foci)
        foci.push_back(Json{{"point", dump_vec(sf.point.rep())},
                            {"epsilon", Json::array({sf.eps[0], sf.eps[1], sf.eps[2], sf.eps[3]})}});
    out["singular_foci"] = foci;

    const TraceResult tr = trace_base(fam, trace_n);
    out["traced_points"] = tr.points.size();
    out["skipped_parameters"] = tr.skipped_parameters;
    out["dual_condition"] = tr.dual_condition;
    const double tol = c.tol > 0 ? c.tol : 1e-8;
    int off_tolerance = 0;
    for (const auto& tp : tr.points)
        if (tp.coord_spread > tol) ++off_tolerance;
    out["points_out_of_tolerance"] = off_tolerance;
    if (off_tolerance > 0)
        c.warnings.push_back(std::to_string(off_tolerance) +
                             " traced points exceed the pairing tolerance");
    if (csv_out) *csv_out = format_csv(tr);

    // recovery round trip when enough base samples exist
    if (tr.points.size() >= 9) {
        std::vector<ProjectivePoint> samples;
        for (const auto& tp : tr.points) samples.push_back(ProjectivePoint::from(tp.q));
        try {
            const RecoveredFamily rec = recover_family(samples);
            std::vector<Mat3> truth(fam.basis().begin(), fam.basis().end());
            out["recovery"] = Json{{"dimension", rec.basis.size()},
                                   {"max_trace", rec.max_trace},
                                   {"subspace_angle", matrix_span_max_angle(rec.basis, truth)}};
        } catch (const MathError& e) {
            out["recovery"] = Json{{"error", e.what()}};
        }
    }
    return out;
}

}  // namespace

std::string svg_from_csv(const std::string& csv) {
    // two panels: the (s,t) parameter angles and the chart angles (arg x1, arg x2)
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    std::vector<std::array<double, 4>> rows;  // theta_s, theta_t, arg x1, arg x2
    while (std::getline(is, line)) {
        std::array<double, 16> f{};
        std::stringstream ss(line);
        std::string cell;
        int idx = 0;
        bool ok = true;
        while (std::getline(ss, cell, ',') && idx < 14) {
            try {
                f[idx] = std::stod(cell);
            } catch (...) {
                ok = false;
            }
            ++idx;
        }
        if (!ok || idx < 14) continue;
        rows.push_back({std::atan2(f[1], f[0]), std::atan2(f[3], f[2]),
                        std::atan2(f[5], f[4]), std::atan2(f[7], f[6])});
    }
    std::ostringstream os;
    const int w = 840, h = 420;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    auto panel = [&](int x0, const char* title, int ix, int iy) {
        os << "<rect x=\"" << x0 << "\" y=\"20\" width=\"380\" height=\"380\" fill=\"none\" "
              "stroke=\"black\"/>\n";
        os << "<text x=\"" << x0 + 10 << "\" y=\"14\" font-size=\"12\">" << title << "</text>\n";
        char buf[160];
        for (const auto& r : rows) {
            const double px = x0 + (r[ix] + M_PI) / (2 * M_PI) * 380.0;
            const double py = 20 + (r[iy] + M_PI) / (2 * M_PI) * 380.0;
            std::snprintf(buf, sizeof buf,
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" fill=\"black\"/>\n", px, py);
            os << buf;
        }
    };
    panel(20, "parameter curve (theta_s, theta_t)", 0, 1);
    panel(440, "chart angles (arg x1, arg x2)", 2, 3);
    os << "</svg>\n";
    return os.str();
}

RunOutput run_command(const std::vector<std::string>& args) {
    RunOutput out;
    CLI::App app{"constructive complex hyperbolic equidistant loci"};
    app.require_subcommand(1);

    std::string scene_path, p1, p2, points_list, bisectors_list, algebra_name;
    std::string sigma_name = "negative";
    std::string json_path, csv_path, svg_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double tol = 0.0;
    int trace_n = 0, samples = 16;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scene", scene_path, "scene JSON file")->required();
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t& v) { seed = v; seed_given = true; },
            "seed override");
        cmd->add_option("--tol", tol, "relative tolerance override");
        cmd->add_option("--json", json_path, "write the report here");
    };

    CLI::App* cb = app.add_subcommand("bisector", "bisector of two points with its anatomy");
    add_common(cb);
    cb->add_option("--p1", p1)->required();
    cb->add_option("--p2", p2)->required();

    CLI::App* ce = app.add_subcommand("equitant", "four-point equitant family pipeline");
    add_common(ce);
    ce->add_option("--points", points_list, "four point names, comma separated")->required();
    ce->add_option("--sigma", sigma_name, "negative|positive|isotropic");
    ce->add_option("--trace", trace_n, "number of trace parameters");
    ce->add_option("--csv", csv_path, "write traced points here");
    ce->add_option("--svg", svg_path, "write the parameter plot here");

    CLI::App* cf = app.add_subcommand("family", "classify a linear family of bisectors");
    add_common(cf);
    cf->add_option("--bisectors", bisectors_list, "bisector map names, comma separated")->required();

    CLI::App* cg = app.add_subcommand("giraud", "pencil determinant cubic and its roots");
    add_common(cg);
    cg->add_option("--points", points_list, "three point names");
    cg->add_option("--bisectors", bisectors_list, "two bisector map names");

    CLI::App* ca = app.add_subcommand("algebra", "3-dimensional algebra classification report");
    add_common(ca);
    ca->add_option("--algebra", algebra_name)->required();
    ca->add_option("--samples", samples, "divisor sample count");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        out.exit_code = 2;
        out.report_json = Json{{"error", e.what()}}.dump(2) + "\n";
        return out;
    }

    Ctx ctx;
    try {
        std::ifstream f(scene_path);
        if (!f) throw SceneError("cannot open scene file: " + scene_path);
        std::stringstream buf;
        buf << f.rdbuf();
        const std::string text = buf.str();
        ctx.scene = parse_scene(text);
        ctx.digest = content_digest(text);
    } catch (const SceneError& e) {
        out.exit_code = 2;
        out.report_json = Json{{"error", e.what()}}.dump(2) + "\n";
        return out;
    }

    if (seed_given) {
        ctx.seed = seed;
    } else if (const char* env = std::getenv("EQUILOCI_SEED")) {
        ctx.seed = std::strtoull(env, nullptr, 10);
    } else {
        ctx.seed = ctx.scene.seed;
    }
    ctx.tol = tol;

    Json args_echo = Json::array();
    for (const auto& a : args) args_echo.push_back(a);

    try {
        Json report;
        if (cb->parsed()) {
            report = base_report(ctx, "bisector", args_echo);
            report["outputs"] = run_bisector(ctx, p1, p2);
        } else if (ce->parsed()) {
            if (trace_n < 0) throw SceneError("--trace must be nonnegative");
            report = base_report(ctx, "equitant", args_echo);
            report["outputs"] = run_equitant(ctx, split_names(points_list), sigma_name, trace_n,
                                             &out.csv);
            if (!svg_path.empty()) out.svg = svg_from_csv(out.csv);
            report["warnings"] = ctx.warnings;  // filled during the run
        } else if (cf->parsed()) {
            report = base_report(ctx, "family", args_echo);
            report["outputs"] = run_family(ctx, split_names(bisectors_list));
        } else if (cg->parsed()) {
            report = base_report(ctx, "giraud", args_echo);
            report["outputs"] = run_giraud(ctx, split_names(points_list), split_names(bisectors_list));
        } else if (ca->parsed()) {
            report = base_report(ctx, "algebra", args_echo);
            report["outputs"] = run_algebra(ctx, algebra_name, samples);
        }
        out.report_json = report.dump(2) + "\n";
        return out;
    } catch (const SceneError& e) {
        out.exit_code = 2;
        out.report_json = Json{{"error", e.what()}}.dump(2) + "\n";
        return out;
    } catch (const MathError& e) {
        out.exit_code = e.code() == Err::IllConditioned ? 4 : 3;
        out.report_json = Json{{"error", e.what()}, {"code", err_name(e.code())}}.dump(2) + "\n";
        return out;
    }
}

}  // namespace equiloci
