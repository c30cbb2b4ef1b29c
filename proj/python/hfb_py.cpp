#include "hfb/deformation.hpp"
#include "hfb/dims.hpp"
#include "hfb/gaudin.hpp"
#include "hfb/report.hpp"
#include "hfb/spectral.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace py::literals;
using namespace hfb;

namespace {

lie::GroupData gd(const std::string& name) { return lie::group_data(lie::parse_group(name)); }

// Builds a model through the config reader so Python sees the same validation as the CLI.
defo::FramedHiggsModel model(const std::string& config) {
    return report::model_from_config(report::parse_config(config), 0);
}

}  // namespace

PYBIND11_MODULE(_hfb, m) {
    m.doc() = "Exact computations for framed Higgs bundles";
    m.attr("__version__") = report::tool_version();

    py::register_exception<report::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "run",
        [](const std::string& config, std::optional<std::string> subcommand, std::optional<std::uint64_t> seed) {
            report::RunOptions opt;
            opt.subcommand = std::move(subcommand);
            opt.seed = seed;
            const auto r = report::run(report::parse_config(config), opt);
            return py::make_tuple(r.exit_code, r.report.dump(), r.csv);
        },
        "config"_a, "subcommand"_a = py::none(), "seed"_a = py::none(),
        "Run a job from its JSON text; returns (exit_code, report_json, csv).");

    m.def("dim_moduli_higgs", [](const std::string& g, int genus, int n) { return dims::dim_moduli_higgs(gd(g), genus, n); },
          "group"_a, "genus"_a, "n"_a);
    m.def("hitchin_base_dim", [](const std::string& g, int genus, int n) { return dims::hitchin_base_dim(gd(g), genus, n); },
          "group"_a, "genus"_a, "n"_a);
    m.def("fiber_dim", [](const std::string& g, int genus, int n) { return dims::fiber_dim(gd(g), genus, n); },
          "group"_a, "genus"_a, "n"_a);
    m.def("spectral_genus", &spectral::spectral_genus, "r"_a, "genus"_a, "n"_a);

    m.def(
        "hitchin_map",
        [](const std::string& config) {
            const auto h = gaudin::hitchin_map(model(config));
            std::vector<std::vector<std::string>> out;
            for (const auto& v : h.coeffs) {
                out.emplace_back();
                for (const auto& c : v) out.back().push_back(to_string(c));
            }
            return out;
        },
        "config"_a, "Coefficients of Q_k as rational strings, lowest degree first.");

    m.def(
        "verify_poisson_identity",
        [](const std::string& config) {
            const auto r = defo::verify_poisson_identity(model(config));
            py::dict d;
            d["phi_rank"] = r.phi_rank;
            d["phi_skew"] = r.phi_skew;
            d["phi_invertible"] = r.phi_invertible;
            d["residual_zero"] = r.residual.is_zero();
            d["compatibility_zero"] = r.compatibility.is_zero();
            d["corrupted_residual_zero"] = r.corrupted_residual.is_zero();
            d["holds"] = r.holds();
            return d;
        },
        "config"_a);

    m.def(
        "commute",
        [](const std::string& config, std::size_t points, std::uint64_t seed) {
            const auto r = gaudin::commutativity_check(model(config), points, seed);
            return py::make_tuple(r.commute(), to_string(r.max_abs), to_string(r.negative_control));
        },
        "config"_a, "random_points"_a = 3, "seed"_a = 0);
}
