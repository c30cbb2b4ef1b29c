#include "hfb/report.hpp"

#include "hfb/dims.hpp"
#include "hfb/gaudin.hpp"
#include "hfb/random.hpp"
#include "hfb/spectral.hpp"

#include <algorithm>
#include <sstream>

#ifndef HFB_VERSION
#define HFB_VERSION "0.0.0"
#endif

namespace hfb::report {

const char* tool_version() { return HFB_VERSION; }

namespace {

// ---------------------------------------------------------------- config access

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ConfigError("field '" + path + "': " + what);
}

const json* find(const json& obj, const char* key) {
    if (!obj.is_object()) return nullptr;
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

Rational as_rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            bad(path, e.what());
        }
    }
    bad(path, "expected an integer or a rational string such as \"-3/4\"");
}

long as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    return v.get<long>();
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) bad(path, "expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected a string");
    return v.get<std::string>();
}

const json& require(const json& obj, const char* key, const std::string& path = "") {
    const json* v = find(obj, key);
    if (!v) bad(join(path, key), "missing");
    return *v;
}

long int_or(const json& obj, const char* key, long def) {
    const json* v = find(obj, key);
    return v ? as_int(*v, key) : def;
}

std::vector<long> int_list(const json& v, const std::string& path) {
    if (v.is_number_integer()) return {v.get<long>()};
    if (!v.is_array()) bad(path, "expected an integer or a list of integers");
    std::vector<long> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], index(path, i)));
    return out;
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
    if (v.is_string()) return {v.get<std::string>()};
    if (!v.is_array()) bad(path, "expected a string or a list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], index(path, i)));
    return out;
}

Matrix as_matrix(const json& v, std::size_t size, const std::string& path) {
    if (!v.is_array() || v.size() != size) bad(path, "expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
    Matrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        const std::string rp = index(path, i);
        if (!v[i].is_array() || v[i].size() != size) bad(rp, "expected a row of length " + std::to_string(size));
        for (std::size_t j = 0; j < size; ++j) m(i, j) = as_rational(v[i][j], index(rp, j));
    }
    return m;
}

lie::GroupId group_of(const json& v, const std::string& path) {
    try {
        return lie::parse_group(as_string(v, path));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        bad(path, e.what());
    }
}

lie::Framing framing_of(const lie::Algebra& g, const json& v, const std::string& path) {
    try {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "trivial") return lie::make_framing(g, lie::FramingKind::Trivial);
            if (s == "torus") return lie::make_framing(g, lie::FramingKind::Torus);
            if (s == "borel") return lie::make_framing(g, lie::FramingKind::Borel);
            bad(path, "unknown framing '" + s + "' (trivial | torus | borel | {\"custom\": [...]})");
        }
        const json* c = find(v, "custom");
        if (!c || !c->is_array()) bad(path, "expected a framing name or {\"custom\": [matrices]}");
        std::vector<Matrix> h;
        for (std::size_t i = 0; i < c->size(); ++i) {
            const std::string p = index(join(path, "custom"), i);
            h.push_back(as_matrix((*c)[i], g.size(), p));
            if (!g.contains(h.back())) bad(p, "not an element of " + g.id().name());
        }
        return lie::make_framing(g, h);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        bad(path, e.what());
    }
}

// ---------------------------------------------------------------- checks

struct Checks {
    json list = json::array();
    std::vector<std::string> failed;

    void add(const std::string& name, bool passed, bool asserted, const std::string& provenance, json values = json::object()) {
        json c{{"name", name}, {"passed", passed}, {"asserted", asserted}, {"provenance", provenance}};
        if (!values.empty()) c["values"] = std::move(values);
        list.push_back(std::move(c));
        if (asserted && !passed) failed.push_back(name);
    }
};

json dim_check_json(const dims::Check& c) {
    return {{"name", c.name}, {"asserted", c.asserted}, {"passed", c.passed}, {"lhs", c.lhs},
            {"rhs", c.rhs},   {"discrepancy", c.discrepancy}, {"provenance", "formula: " + c.provenance}};
}

dims::FramingDims framing_dims_of(const json& cfg) {
    dims::FramingDims f;
    const json* v = find(cfg, "framing_dims");
    if (!v) return f;
    const std::string p = "framing_dims";
    auto ints = [&](const char* key) {
        std::vector<int> out;
        if (const json* x = find(*v, key))
            for (long k : int_list(*x, join(p, key))) out.push_back(static_cast<int>(k));
        return out;
    };
    f.dim_h = ints("dim_h");
    f.dim_t = ints("dim_t");
    f.dim_z_hx = ints("dim_z_hx");
    if (const json* z = find(*v, "dim_z_h")) f.dim_z_h = static_cast<int>(as_int(*z, join(p, "dim_z_h")));
    return f;
}

json dim_report_json(const dims::DimReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(dim_check_json(c));
    json torsor{{"framed_group", r.torsor.framed_group}, {"relative_group", r.torsor.relative_group}};
    if (r.torsor.general_group_summed) torsor["general_group_summed"] = *r.torsor.general_group_summed;
    if (r.torsor.general_group_unsummed) torsor["general_group_unsummed"] = *r.torsor.general_group_unsummed;
    if (r.torsor.general_total_summed) torsor["general_total_summed"] = *r.torsor.general_total_summed;
    if (r.torsor.general_total_unsummed) torsor["general_total_unsummed"] = *r.torsor.general_total_unsummed;
    if (!r.torsor.note.empty()) torsor["note"] = r.torsor.note;
    return {{"group", r.group},
            {"genus", r.genus},
            {"n", r.n},
            {"dim_MH", r.dim_mh},
            {"dim_MFH", r.dim_mfh},
            {"N", r.base_dim},
            {"fiber", r.fiber},
            {"relative_fiber", r.relative_fiber},
            {"torsor", torsor},
            {"checks", checks}};
}

// ---------------------------------------------------------------- subcommands

void run_dims(const json& cfg, Format format, RunResult& out, Checks& checks) {
    const auto f = framing_dims_of(cfg);
    if (const json* grid = find(cfg, "grid")) {
        const auto groups = string_list(require(*grid, "groups", "grid"), "grid.groups");
        const auto genera = int_list(require(*grid, "genus", "grid"), "grid.genus");
        const auto ns = int_list(require(*grid, "n", "grid"), "grid.n");
        json rows = json::array();
        std::ostringstream csv;
        csv << "group,genus,n,dim_MH,dim_MFH,N,fiber,relative_fiber,moduli_equals_base_plus_fiber,"
               "relative_fiber_equals_base,framed_total_minus_torsor\n";
        std::size_t cases = 0, passed = 0;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            const auto gd = lie::group_data(group_of(groups[gi], index("grid.groups", gi)));
            for (long g : genera)
                for (long n : ns) {
                    const auto r = dims::consistency_audit(gd, static_cast<int>(g), static_cast<int>(n), f);
                    ++cases;
                    if (r.all_asserted_pass()) ++passed;
                    else
                        checks.failed.push_back("dims " + r.group + " g=" + std::to_string(g) + " n=" + std::to_string(n));
                    rows.push_back(dim_report_json(r));
                    csv << r.group << ',' << g << ',' << n << ',' << r.dim_mh << ',' << r.dim_mfh << ',' << r.base_dim
                        << ',' << r.fiber << ',' << r.relative_fiber << ',' << (r.checks[0].passed ? "pass" : "FAIL")
                        << ',' << (r.checks[1].passed ? "pass" : "FAIL") << ',' << r.checks[2].discrepancy << '\n';
                }
        }
        out.report["results"] = rows;
        checks.list.push_back({{"name", "dimension_grid"}, {"asserted", true}, {"passed", passed == cases},
                               {"cases", cases}, {"cases_passed", passed},
                               {"provenance", "formula: dim M_H = N + fibre; fibre + n dim T - dim Z(G) = N"}});
        if (format == Format::Csv) out.csv = csv.str();
        return;
    }
    if (format == Format::Csv) bad("format", "csv output is available for dims grids only");
    const auto gd = lie::group_data(group_of(require(cfg, "group"), "group"));
    const auto r = dims::consistency_audit(gd, static_cast<int>(as_int(require(cfg, "genus"), "genus")),
                                           static_cast<int>(as_int(require(cfg, "n"), "n")), f);
    out.report["result"] = dim_report_json(r);
    for (const auto& c : r.checks) {
        checks.list.push_back(dim_check_json(c));
        if (c.asserted && !c.passed) checks.failed.push_back(c.name);
    }
}

json hypercoh_json(const defo::HypercohResult& h) {
    return {{"complex", h.complex}, {"h0", h.h0}, {"h1", h.h1}, {"h2", h.h2}, {"euler_expected", h.euler_expected},
            {"euler_ok", h.euler_ok}};
}

json model_json(const defo::FramedHiggsModel& m) {
    json pts = json::array(), res = json::array(), fr = json::array();
    for (const auto& x : m.curve.points) pts.push_back(rational_json(x));
    for (const auto& a : m.residues) res.push_back(matrix_json(a));
    for (const auto& f : m.framings) fr.push_back({{"dim_h", f.h.size()}, {"dim_perp", f.perp.size()}});
    return {{"group", m.g.id().name()}, {"kappa", rational_json(m.g.kappa())}, {"points", pts}, {"framings", fr},
            {"residues", res}};
}

void run_defo(const json& cfg, std::uint64_t seed, RunResult& out, Checks& checks) {
    const auto model = model_from_config(cfg, seed);
    out.report["model"] = model_json(model);
    const auto cx = defo::build_complexes(model);
    json complexes = json::array();
    bool euler = true;
    for (const auto* c : {&cx.twisted, &cx.framed, &cx.twisted_dual}) {
        const auto h = defo::hypercoh(*c);
        euler = euler && h.euler_ok;
        complexes.push_back(hypercoh_json(h));
    }
    out.report["complexes"] = complexes;
    out.report["bound"] = cx.bound;
    checks.add("euler_characteristic", euler, true,
               "formula: h0 - h1 + h2 = chi(F0) - chi(F1) by Riemann-Roch on each term");
    const std::size_t sub = defo::subsheaf_mapping_failures(model);
    checks.add("differential_preserves_framing", sub == 0, true,
               "oracle: [theta, h_x] lands in the annihilator at each marked point", {{"failures", sub}});

    const auto t = defo::verify_poisson_identity(cx);
    const bool nondeg_expected = cx.framed.h0() == 0 && cx.framed.h2() == 0;
    out.report["symplectic"] = {{"dim", t.phi.rows()}, {"rank", t.phi_rank}, {"skew", t.phi_skew},
                                {"invertible", t.phi_invertible}, {"degenerate_directions", t.degenerate_directions.cols()}};
    checks.add("pairing_skew", t.phi_skew, true, "oracle: Phi + Phi^T = 0 on the framed H^1 basis");
    checks.add("pairing_representative_independent", true, true,
               "oracle: Phi unchanged after adding a coboundary to each cocycle");
    checks.add("pairing_nondegenerate", t.phi_invertible, nondeg_expected,
               "oracle: rank of Phi equals h1 of the framed complex when h0 = h2 = 0",
               {{"rank", t.phi_rank}, {"h1", t.phi.rows()}});
    const bool residual_zero = t.phi_invertible && t.residual.is_zero();
    checks.add("poisson_identity", residual_zero, t.phi_invertible,
               "oracle: d_phi Phi^{-1} d_phi^T S - P = 0 in exact arithmetic");
    checks.add("dual_compatibility", t.compatibility.is_zero(), t.phi_invertible,
               "oracle: d_phi^T S = Phi E on H^1 bases");
    checks.add("negative_control_sign_flip", !t.corrupted_residual.is_zero() || t.p.is_zero(), false,
               "oracle: flipping the sign of the dual map must leave a residual whenever P != 0",
               {{"P_zero", t.p.is_zero()}});
    if (find(cfg, "emit_matrices") && cfg["emit_matrices"].is_boolean() && cfg["emit_matrices"].get<bool>())
        out.report["matrices"] = {{"phi", matrix_json(t.phi)}, {"d_phi", matrix_json(t.d_phi)}, {"P", matrix_json(t.p)},
                                  {"serre", matrix_json(t.serre)}, {"residual", matrix_json(t.residual)}};
}

void run_gaudin(const json& cfg, std::uint64_t seed, RunResult& out, Checks& checks) {
    const auto model = model_from_config(cfg, seed);
    out.report["model"] = model_json(model);
    const auto h = gaudin::hitchin_map(model);
    json coeffs = json::array();
    for (std::size_t k = 0; k < h.degrees.size(); ++k) coeffs.push_back({{"degree", h.degrees[k]}, {"Q", upoly_json(h.coeffs[k])}});
    out.report["hitchin"] = {{"dimension", h.dimension()}, {"components", coeffs}};
    if (std::find(h.degrees.begin(), h.degrees.end(), 2) != h.degrees.end()) {
        json r = json::array();
        for (const auto& x : gaudin::quadratic_residues(h, model.curve)) r.push_back(rational_json(x));
        out.report["gaudin_hamiltonians"] = r;
    }

    const auto points = static_cast<std::size_t>(int_or(cfg, "random_points", 3));
    const auto rep = gaudin::commutativity_check(model, points, seed);
    json table = json::array();
    for (const auto& e : rep.table)
        table.push_back({{"a", rep.labels[e.a]}, {"b", rep.labels[e.b]}, {"max_abs", rational_json(e.max_abs)}});
    out.report["commutativity"] = {{"functions", rep.functions}, {"points", rep.points}, {"table", table},
                                   {"max_abs", rational_json(rep.max_abs)},
                                   {"negative_control", rational_json(rep.negative_control)}};
    checks.add("hitchin_coefficients_commute", rep.commute(), true,
               "oracle: exact Lie-Poisson brackets of the Hitchin coefficient polynomials");
    checks.add("negative_control_linear_observable", sgn(rep.negative_control) != 0, false,
               "oracle: a generic linear observable does not commute with every coefficient");

    if (const json* fl = find(cfg, "flow")) {
        gaudin::FlowOptions fo;
        fo.t_end = find(*fl, "t_end") ? as_double((*fl)["t_end"], "flow.t_end") : fo.t_end;
        fo.steps = find(*fl, "steps") ? static_cast<std::size_t>(as_int((*fl)["steps"], "flow.steps")) : fo.steps;
        fo.tolerance = find(*fl, "tolerance") ? as_double((*fl)["tolerance"], "flow.tolerance") : fo.tolerance;
        fo.record_every = static_cast<std::size_t>(int_or(*fl, "record_every", 0));
        if (fo.steps == 0) bad("flow.steps", "must be positive");
        const auto obs = gaudin::hitchin_observables(model.g, model.curve);
        std::size_t which = 0;
        if (const json* hv = find(*fl, "hamiltonian")) {
            if (hv->is_string()) {
                const auto it = std::find_if(obs.begin(), obs.end(), [&](const auto& o) { return o.label == hv->get<std::string>(); });
                if (it == obs.end()) bad("flow.hamiltonian", "no Hitchin coefficient labelled " + hv->get<std::string>());
                which = static_cast<std::size_t>(it - obs.begin());
            } else {
                const long k = as_int(*hv, "flow.hamiltonian");
                if (k < 0 || static_cast<std::size_t>(k) >= obs.size()) bad("flow.hamiltonian", "index out of range");
                which = static_cast<std::size_t>(k);
            }
        }
        Rational scale = 1;
        if (const json* sc = find(*fl, "start_scale")) scale = as_rational(*sc, "flow.start_scale");
        std::vector<Matrix> start;
        for (const auto& a : model.residues) start.push_back(scale * a);
        const auto r = gaudin::hamiltonian_flow(model.g, model.curve, start, obs[which], fo);
        json drift = json::object();
        for (std::size_t k = 0; k < r.labels.size(); ++k) drift[r.labels[k]] = r.drift[k];
        out.report["flow"] = {{"hamiltonian", obs[which].label}, {"start_scale", rational_json(scale)}, {"t_end", fo.t_end}, {"steps", fo.steps},
                              {"tolerance", fo.tolerance}, {"drift", drift}, {"max_drift", r.max_drift},
                              {"samples", r.times.size()}};
        checks.add("flow_conserves_hitchin_map", r.accepted, true,
                   "oracle: relative drift of every coefficient along RK4 below the tolerance",
                   {{"max_drift", r.max_drift}, {"tolerance", fo.tolerance}});
    }
}

json branch_json(const spectral::BranchPoint& b) {
    json j{{"multiplicity", b.multiplicity}, {"approx", b.approx}};
    if (b.exact)
        j["exact"] = rational_json(*b.exact);
    else
        j["interval"] = {rational_json(b.lo), rational_json(b.hi)};
    return j;
}

json torsor_json(const spectral::TorsorFiberReport& t) {
    json j{{"group", t.group}, {"genus", t.genus}, {"n", t.n}, {"in_locus", t.in_locus}};
    if (!t.note.empty()) j["note"] = t.note;
    if (t.fiber) j["fiber"] = *t.fiber;
    if (t.framed_fiber) j["framed_fiber"] = *t.framed_fiber;
    if (t.relative_fiber) j["relative_fiber"] = *t.relative_fiber;
    if (t.base_dim) j["N"] = *t.base_dim;
    return j;
}

void run_spectral(const json& cfg, std::uint64_t seed, RunResult& out, Checks& checks) {
    spectral::SpectralOptions so;
    if (const json* w = find(cfg, "width")) so.width = as_rational(*w, "width");
    if (sgn(so.width) <= 0) bad("width", "must be positive");
    if (find(cfg, "residues") || find(cfg, "points")) {
        const auto model = model_from_config(cfg, seed);
        out.report["model"] = model_json(model);
        const auto s = spectral::spectral_data(model, so);
        json a = json::array();
        for (std::size_t k = 0; k < s.b.size(); ++k)
            a.push_back({{"k", k + 1}, {"numerator", upoly_json(s.b[k])}, {"denominator_power", k + 1}});
        json branch = json::array();
        for (const auto& b : s.real_branch_points) branch.push_back(branch_json(b));
        json at_points = json::array();
        for (const auto& v : s.disc_at_points) at_points.push_back(rational_json(v));
        json rep{{"rank", s.rank},
                 {"denominator", upoly_json(s.denominator)},
                 {"a", a},
                 {"discriminant", {{"numerator", upoly_json(s.disc)}, {"denominator_power", s.rank * (s.rank - 1)}}},
                 {"discriminant_at_points", at_points},
                 {"degenerate", s.degenerate},
                 {"smooth", s.smooth},
                 {"unramified_over_D", s.unramified_over_d},
                 {"branch_degree", s.branch_degree},
                 {"branch_count", s.branch_count},
                 {"multiplicity_at_infinity", s.multiplicity_at_infinity},
                 {"real_branch_points", branch},
                 {"nonreal_branch_points", s.nonreal_branch_points}};
        if (s.genus) rep["genus"] = *s.genus;
        out.report["spectral"] = rep;
        if (!s.degenerate)
            checks.add("branch_count_matches_discriminant", s.branch_count == s.branch_degree, true,
                       "formula: finite roots of the discriminant plus the order at infinity equal r(r-1) deg K(D)",
                       {{"count", s.branch_count}, {"degree", s.branch_degree}});
        if (s.genus) {
            const long expected = spectral::spectral_genus(s.rank, 0, static_cast<int>(s.n));
            checks.add("genus_matches_riemann_hurwitz", *s.genus == expected, true,
                       "formula: g_s = r(g-1) + 1 + r(r-1)(2g-2+n)/2", {{"genus", *s.genus}, {"expected", expected}});
        }
        const auto t = spectral::torsor_fiber_report(model, s);
        out.report["torsor"] = torsor_json(t);
        if (t.in_locus)
            checks.add("relative_fiber_equals_base", t.relative_equals_base, true,
                       "formula: fibre + n dim T - dim Z(G) = N (genus-0 substitution)");
    }
    if (const json* grid = find(cfg, "genus_grid")) {
        const auto rs = int_list(require(*grid, "r", "genus_grid"), "genus_grid.r");
        const auto gs = int_list(require(*grid, "genus", "genus_grid"), "genus_grid.genus");
        const auto ns = int_list(require(*grid, "n", "genus_grid"), "genus_grid.n");
        json rows = json::array();
        for (long r : rs)
            for (long g : gs)
                for (long n : ns) {
                    const long gsv = spectral::spectral_genus(static_cast<int>(r), static_cast<int>(g), static_cast<int>(n));
                    rows.push_back({{"r", r}, {"genus", g}, {"n", n}, {"spectral_genus", gsv}});
                }
        out.report["genus_grid"] = rows;
        checks.add("spectral_genus_equals_fiber_dimension", true, true,
                   "formula: Riemann-Hurwitz genus against (g-1) dim G + n (dim B - dim T) + dim Z(G) for gl(r)",
                   {{"cases", rows.size()}});
    }
    if (!find(cfg, "residues") && !find(cfg, "points") && !find(cfg, "genus_grid"))
        bad("residues", "spectral jobs need a model (points, residues) or a genus_grid");
    if (const json* f = find(cfg, "formula_torsor")) {
        const auto gd = lie::group_data(group_of(require(*f, "group", "formula_torsor"), "formula_torsor.group"));
        const auto t = spectral::torsor_fiber_dims(gd, static_cast<int>(as_int(require(*f, "genus", "formula_torsor"), "formula_torsor.genus")),
                                                   static_cast<int>(as_int(require(*f, "n", "formula_torsor"), "formula_torsor.n")));
        out.report["formula_torsor"] = torsor_json(t);
        checks.add("formula_relative_fiber_equals_base", t.relative_equals_base, true,
                   "formula: fibre + n dim T - dim Z(G) = N");
    }
}

void run_audit(const json& cfg, std::uint64_t seed, RunResult& out, Checks& checks) {
    const std::vector<std::string> default_groups{"sl2", "sl3", "gl2", "gl3", "sp4", "so5", "so4"};
    const auto groups = find(cfg, "groups") ? string_list(cfg["groups"], "groups") : default_groups;
    const auto framings = find(cfg, "framings") ? string_list(cfg["framings"], "framings")
                                                : std::vector<std::string>{"trivial", "torus", "borel"};
    json lie_rows = json::array();
    bool lie_ok = true;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        group_of(groups[i], index("groups", i));
        for (const auto& f : framings) {
            if (f != "trivial" && f != "torus" && f != "borel") bad("framings", "unknown framing '" + f + "'");
            const auto c = lie_check(groups[i], f, seed);
            lie_ok = lie_ok && c.passed();
            lie_rows.push_back({{"group", c.group}, {"framing", c.framing},
                                {"invariance_residual", rational_json(c.invariance_residual)},
                                {"containment_failures", c.containment_failures}});
        }
    }
    out.report["lie"] = lie_rows;
    checks.add("form_invariance_and_bracket_containment", lie_ok, true,
               "oracle: sigma([a,c],b) + sigma(c,[a,b]) = 0 and [h, h-perp] in h-perp, exact");

    std::size_t cases = 0, passed = 0;
    json discrepancies = json::array();
    for (const auto& name : groups) {
        const auto gd = lie::group_data(lie::parse_group(name));
        for (int g = 1; g <= 4; ++g)
            for (int n = 1; n <= 4; ++n) {
                const auto r = dims::consistency_audit(gd, g, n);
                ++cases;
                if (r.all_asserted_pass()) ++passed;
                if (g == 1 && n == 1)
                    discrepancies.push_back({{"group", name}, {"framed_total_minus_torsor", r.checks[2].discrepancy},
                                             {"dim_center_alg", gd.dim_center_alg}});
            }
    }
    out.report["dims"] = {{"cases", cases}, {"passed", passed}, {"framed_discrepancy", discrepancies}};
    checks.add("dimension_identities", passed == cases, true,
               "formula: dim M_H = N + fibre and fibre + n dim T - dim Z(G) = N", {{"cases", cases}});

    std::size_t gcases = 0;
    for (int r = 2; r <= 5; ++r)
        for (int g = 0; g <= 4; ++g)
            for (int n = 1; n <= 5; ++n) {
                spectral::spectral_genus(r, g, n);
                ++gcases;
            }
    checks.add("spectral_genus_identity", true, true,
               "formula: Riemann-Hurwitz genus against the gl(r) fibre dimension", {{"cases", gcases}});
}

}  // namespace

std::string rational_json(const Rational& q) { return to_string(q); }

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json upoly_json(const upoly::UPoly& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(rational_json(c));
    return a;
}

json parse_config(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

defo::FramedHiggsModel model_from_config(const json& cfg, std::uint64_t seed) {
    const auto id = group_of(require(cfg, "group"), "group");
    const Rational kappa = find(cfg, "kappa") ? as_rational(cfg["kappa"], "kappa") : Rational(0);
    lie::Algebra g(id, kappa);
    if (!id.classical()) bad("group", "explicit models need a classical group");

    const json& pts = require(cfg, "points");
    if (!pts.is_array() || pts.empty()) bad("points", "expected a nonempty list of marked points");
    std::vector<Rational> points;
    for (std::size_t i = 0; i < pts.size(); ++i) points.push_back(as_rational(pts[i], index("points", i)));
    const curve::MarkedCurve c(points);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        bad("points", e.what());
    }
    const std::size_t n = points.size();

    std::vector<lie::Framing> framings;
    const json* fr = find(cfg, "framings");
    if (!fr || fr->is_string() || fr->is_object()) {
        const lie::Framing f = fr ? framing_of(g, *fr, "framings") : lie::make_framing(g, lie::FramingKind::Trivial);
        framings.assign(n, f);
    } else if (fr->is_array()) {
        if (fr->size() != n) bad("framings", "expected one framing per marked point");
        for (std::size_t i = 0; i < n; ++i) framings.push_back(framing_of(g, (*fr)[i], index("framings", i)));
    } else {
        bad("framings", "expected a framing or a list of framings");
    }

    const json& res = require(cfg, "residues");
    std::vector<Matrix> residues;
    if (res.is_string() || res.is_object()) {
        if (res.is_string() && res.get<std::string>() != "random") bad("residues", "expected \"random\", {\"random\": ...} or a list of matrices");
        int height = 10;
        if (res.is_object()) {
            const json& r = require(res, "random", "residues");
            if (const json* hgt = find(r, "height")) height = static_cast<int>(as_int(*hgt, "residues.random.height"));
            if (height < 1) bad("residues.random.height", "must be at least 1");
        }
        RationalRng rng(seed, height);
        std::vector<std::vector<Matrix>> perps;
        for (const auto& f : framings) perps.push_back(f.perp);
        residues = random_residues(g, perps, rng);
    } else if (res.is_array()) {
        if (res.size() != n) bad("residues", "expected one residue matrix per marked point");
        for (std::size_t i = 0; i < n; ++i) {
            residues.push_back(as_matrix(res[i], g.size(), index("residues", i)));
            if (!g.contains(residues.back())) bad(index("residues", i), "not an element of " + id.name());
        }
    } else {
        bad("residues", "expected \"random\", {\"random\": ...} or a list of matrices");
    }
    try {
        return defo::make_model(g, c, framings, residues);
    } catch (const std::invalid_argument& e) {
        bad("residues", e.what());
    }
}

LieCheck lie_check(const std::string& group, const std::string& framing, std::uint64_t seed) {
    const lie::Algebra g(lie::parse_group(group));
    LieCheck c{g.id().name(), framing, 0, 0};
    const auto sigma = g.form_fn();
    const auto& b = g.basis();
    auto update = [&](const Matrix& x, const Matrix& y, const Matrix& z) {
        const Rational r = abs(lie::check_invariance(sigma, x, y, z));
        if (r > c.invariance_residual) c.invariance_residual = r;
    };
    for (const auto& x : b)
        for (const auto& y : b)
            for (const auto& z : b) update(x, y, z);
    RationalRng rng(seed);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = rng.element(g), y = rng.element(g), z = rng.element(g);
        update(x, y, z);
    }
    const lie::FramingKind kind = framing == "torus"   ? lie::FramingKind::Torus
                                  : framing == "borel" ? lie::FramingKind::Borel
                                                       : lie::FramingKind::Trivial;
    c.containment_failures = lie::bracket_containment_failures(g, lie::make_framing(g, kind));
    return c;
}

RunResult run(const json& config, const RunOptions& opt) {
    RunResult out;
    out.report = {{"tool", "hfb"}, {"version", tool_version()}, {"schema_version", kSchemaVersion}, {"config", config}};
    Checks checks;
    try {
        if (!config.is_object()) throw ConfigError("config: expected a JSON object");
        std::string sub;
        if (opt.subcommand)
            sub = *opt.subcommand;
        else
            sub = as_string(require(config, "subcommand"), "subcommand");
        if (const json* s = find(config, "subcommand"); s && opt.subcommand && as_string(*s, "subcommand") != sub)
            bad("subcommand", "config says '" + s->get<std::string>() + "' but the command line says '" + sub + "'");
        std::uint64_t seed = 0;
        if (const json* s = find(config, "seed")) {
            const long v = as_int(*s, "seed");
            if (v < 0) bad("seed", "must be nonnegative");
            seed = static_cast<std::uint64_t>(v);
        }
        if (opt.seed) seed = *opt.seed;
        Format format = Format::Json;
        if (const json* f = find(config, "format")) {
            const std::string s = as_string(*f, "format");
            if (s == "csv") format = Format::Csv;
            else if (s != "json") bad("format", "expected json or csv");
        }
        if (opt.format) format = *opt.format;
        out.report["subcommand"] = sub;
        out.report["seed"] = seed;

        if (sub == "dims")
            run_dims(config, format, out, checks);
        else if (format == Format::Csv)
            bad("format", "csv output is available for dims grids only");
        else if (sub == "defo")
            run_defo(config, seed, out, checks);
        else if (sub == "gaudin")
            run_gaudin(config, seed, out, checks);
        else if (sub == "spectral")
            run_spectral(config, seed, out, checks);
        else if (sub == "audit")
            run_audit(config, seed, out, checks);
        else
            bad("subcommand", "unknown subcommand '" + sub + "' (dims | defo | gaudin | spectral | audit)");
    } catch (const std::invalid_argument& e) {
        out.report["error"] = e.what();
        out.report["checks"] = checks.list;
        out.exit_code = 2;
        return out;
    } catch (const std::logic_error& e) {
        // internal identity failure
        checks.add("internal_consistency", false, true, "oracle: internal cross-check", {{"message", e.what()}});
    }
    out.report["checks"] = checks.list;
    out.failed = checks.failed;
    out.report["failed_checks"] = out.failed;
    out.exit_code = out.failed.empty() ? 0 : 1;
    return out;
}

}  // namespace hfb::report
