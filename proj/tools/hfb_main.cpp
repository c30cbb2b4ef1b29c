// hfb: batch front end for the dims, defo, gaudin, spectral and audit jobs.
#include "hfb/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Args {
    std::string config;
    std::string out;
    std::string format;
    std::optional<std::uint64_t> seed;
};

int execute(const std::string& sub, const Args& a) {
    using namespace hfb::report;
    std::ifstream in(a.config);
    if (!in) {
        std::cerr << "hfb: cannot read config '" << a.config << "'\n";
        return 2;
    }
    std::stringstream text;
    text << in.rdbuf();

    RunResult r;
    RunOptions opt;
    opt.subcommand = sub;
    opt.seed = a.seed;
    if (a.format == "csv") opt.format = Format::Csv;
    if (a.format == "json") opt.format = Format::Json;
    try {
        r = run(parse_config(text.str()), opt);
    } catch (const ConfigError& e) {
        r.report = {{"tool", "hfb"}, {"version", tool_version()}, {"schema_version", kSchemaVersion},
                    {"subcommand", sub}, {"error", e.what()}};
        r.exit_code = 2;
    }

    const std::string body = r.csv.empty() ? r.report.dump(2) + "\n" : r.csv;
    if (a.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream o(a.out, std::ios::binary);
        if (!o) {
            std::cerr << "hfb: cannot write '" << a.out << "'\n";
            return 2;
        }
        o << body;
    }
    if (r.exit_code == 2) std::cerr << "hfb: invalid input: " << r.report.value("error", std::string()) << '\n';
    if (r.exit_code == 1)
        for (const auto& f : r.failed) std::cerr << "hfb: check failed: " << f << '\n';
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Framed Higgs bundle toolkit"};
    app.set_version_flag("--version", std::string(hfb::report::tool_version()));
    app.require_subcommand(1);

    Args args;
    const char* subs[][2] = {{"dims", "dimension formulas and identities"},
                             {"defo", "deformation complexes, pairing and Poisson identity"},
                             {"gaudin", "Hitchin map, Poisson commutativity and flows"},
                             {"spectral", "spectral curves, branch points and fibre dimensions"},
                             {"audit", "Lie-theoretic and dimension consistency audit"}};
    for (const auto& s : subs) {
        auto* c = app.add_subcommand(s[0], s[1]);
        c->add_option("--config", args.config, "JSON job file")->required()->check(CLI::ExistingFile);
        c->add_option("--out", args.out, "write the report here instead of stdout");
        c->add_option("--format", args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--seed", args.seed, "override the config seed");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    for (const auto* c : app.get_subcommands()) return execute(c->get_name(), args);
    return 2;
}
