// Acceptance run: one PASS/FAIL line per criterion.
//
//   hfb_acceptance [--expect-fail i,j,...]
//
// Exit status is 0 when the failing criteria are exactly the expected ones.
#include "hfb/deformation.hpp"
#include "hfb/dims.hpp"
#include "hfb/gaudin.hpp"
#include "hfb/random.hpp"
#include "hfb/report.hpp"
#include "hfb/spectral.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hfb;

namespace {

// pinned limits
constexpr double kGridSeconds = 1.0;
constexpr double kGenusSeconds = 1.0;
constexpr double kCommuteSeconds = 300.0;
constexpr double kFlowSeconds = 60.0;
constexpr double kFlowDrift = 1e-8;
constexpr double kFlowTime = 1.0;
constexpr std::size_t kFlowSteps = 10000;
// Trajectories start from unit-scale residues: at height 10 the real flow can leave
// every bounded set before t = 1, which is a property of the ODE rather than the integrator.
const Rational kFlowScale(1, 10);
constexpr std::size_t kCommutePoints = 20;
constexpr std::size_t kPairingModels = 10;
constexpr std::size_t kIdentityModels = 5;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<Rational> kPoints{2, -1, Rational(1, 3), 5};

defo::FramedHiggsModel random_model(const char* group, std::size_t n, lie::FramingKind kind, std::uint64_t seed) {
    const lie::Algebra g(lie::parse_group(group));
    const auto f = lie::make_framing(g, kind);
    std::vector<lie::Framing> framings(n, f);
    std::vector<std::vector<Matrix>> perps(n, f.perp);
    RationalRng rng(seed);
    return defo::make_model(g, curve::MarkedCurve(std::vector<Rational>(kPoints.begin(), kPoints.begin() + static_cast<long>(n))),
                            framings, random_residues(g, perps, rng));
}

const char* kGridGroups[] = {"sl2", "sl3", "gl2", "gl3", "sp4", "so5"};

Outcome dimension_grid() {
    const auto t0 = std::chrono::steady_clock::now();
    int cases = 0, ok = 0;
    for (const char* name : kGridGroups) {
        const auto gd = lie::group_data(lie::parse_group(name));
        for (int g = 1; g <= 4; ++g)
            for (int n = 1; n <= 4; ++n) {
                ++cases;
                const long mh = dims::dim_moduli_higgs(gd, g, n);
                const long big_n = dims::hitchin_base_dim(gd, g, n);
                const long fib = dims::fiber_dim(gd, g, n);
                if (mh == big_n + fib && fib + static_cast<long>(n) * gd.dim_torus - gd.dim_center_grp == big_n) ++ok;
            }
    }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << ok << "/" << cases << " exact, " << s << " s";
    return {ok == cases && cases == 96 && s < kGridSeconds, d.str()};
}

Outcome framed_torsor() {
    int cases = 0, ok = 0;
    std::string first_bad;
    for (const char* name : kGridGroups) {
        const auto gd = lie::group_data(lie::parse_group(name));
        for (int g = 1; g <= 4; ++g)
            for (int n = 1; n <= 4; ++n) {
                ++cases;
                const long discrepancy = dims::dim_moduli_framed(gd, g, n, {}) -
                                         (dims::dim_moduli_higgs(gd, g, n) + static_cast<long>(n) * gd.dim_g - gd.dim_center_grp);
                const long expected = 2L * gd.dim_center_alg;
                if (discrepancy == expected) {
                    ++ok;
                } else if (first_bad.empty()) {
                    first_bad = std::string(name) + " g=" + std::to_string(g) + " n=" + std::to_string(n) +
                                ": discrepancy " + std::to_string(discrepancy) + ", expected " + std::to_string(expected);
                }
            }
    }
    std::ostringstream d;
    d << ok << "/" << cases << " match 2 dim Z(g)";
    if (!first_bad.empty()) d << "; first mismatch " << first_bad;
    return {ok == cases, d.str()};
}

Outcome spectral_genus_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    int cases = 0, ok = 0;
    for (int r = 2; r <= 5; ++r)
        for (int g = 0; g <= 4; ++g)
            for (int n = 1; n <= 5; ++n) {
                ++cases;
                // Riemann-Hurwitz with r(r-1)(2g-2+n) simple branch points
                const long chi = static_cast<long>(r) * (2 * g - 2) + static_cast<long>(r) * (r - 1) * (2 * g - 2 + n);
                const long rh = chi / 2 + 1;
                const auto gd = lie::group_data(lie::GroupId{lie::Family::GL, r});
                try {
                    if (spectral::spectral_genus(r, g, n) == rh && rh == dims::fiber_dim_formula(gd, g, n)) ++ok;
                } catch (const std::logic_error&) {
                }
            }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << ok << "/" << cases << " exact, " << s << " s";
    return {ok == cases && cases == 100 && s < kGenusSeconds, d.str()};
}

Outcome poisson_commutativity() {
    const auto t0 = std::chrono::steady_clock::now();
    int runs = 0, ok = 0;
    std::size_t pairs = 0;
    for (const char* name : {"sl2", "sl3", "gl2"})
        for (std::size_t n : {2u, 3u, 4u}) {
            const auto m = random_model(name, n, lie::FramingKind::Trivial, 100 + n);
            // the model point plus 19 further seeded tuples
            const auto rep = gaudin::commutativity_check(m, kCommutePoints - 1, 500 + n);
            ++runs;
            pairs += rep.table.size();
            if (rep.commute() && rep.points == kCommutePoints) ++ok;
        }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << ok << "/" << runs << " configurations, " << pairs << " coefficient pairs x " << kCommutePoints
      << " points all exactly 0, " << s << " s";
    return {ok == runs && s < kCommuteSeconds, d.str()};
}

Outcome symplectic_pairing() {
    int models = 0, ok = 0, full_rank_cases = 0;
    std::string first_bad;
    std::uint64_t seed = 0;
    for (const char* name : {"sl2", "sl3"})
        for (std::size_t n : {2u, 3u})
            for (auto kind : {lie::FramingKind::Trivial, lie::FramingKind::Torus})
                for (int rep = 0; rep < 2; ++rep) {
                    if (std::string(name) == "sl3" && n == 3 && rep == 1) continue;
                    const auto m = random_model(name, n, kind, 1000 + seed++);
                    ++models;
                    bool good = true;
                    try {
                        const auto cx = defo::build_complexes(m);
                        for (const auto* c : {&cx.twisted, &cx.framed, &cx.twisted_dual}) good = good && defo::hypercoh(*c).euler_ok;
                        // throws if a coboundary changes the pairing
                        const Matrix phi = defo::symplectic_matrix(cx.framed);
                        good = good && (phi + phi.transpose()).is_zero();
                        if (cx.framed.h0() == 0 && cx.framed.h2() == 0) {
                            ++full_rank_cases;
                            good = good && rank(phi) == phi.rows();
                        }
                    } catch (const std::logic_error& e) {
                        good = false;
                        if (first_bad.empty()) first_bad = e.what();
                    }
                    if (good) ++ok;
                    else if (first_bad.empty()) first_bad = std::string(name) + " n=" + std::to_string(n);
                }
    std::ostringstream d;
    d << ok << "/" << models << " models skew, representative-independent, Euler exact; " << full_rank_cases
      << " with h0 = h2 = 0 all full rank";
    if (!first_bad.empty()) d << "; first failure " << first_bad;
    return {ok == models && static_cast<std::size_t>(models) >= kPairingModels, d.str()};
}

Outcome poisson_identity() {
    struct Case {
        const char* group;
        std::size_t n;
        lie::FramingKind kind;
        std::uint64_t seed;
    };
    const std::vector<Case> cases{{"sl2", 3, lie::FramingKind::Trivial, 1}, {"sl2", 4, lie::FramingKind::Trivial, 2},
                                  {"sl2", 3, lie::FramingKind::Torus, 3},   {"sl3", 2, lie::FramingKind::Trivial, 4},
                                  {"sl3", 2, lie::FramingKind::Torus, 5},   {"gl2", 3, lie::FramingKind::Trivial, 6}};
    int ok = 0, controls = 0, controls_ok = 0;
    for (const auto& c : cases) {
        const auto r = defo::verify_poisson_identity(random_model(c.group, c.n, c.kind, c.seed));
        if (r.holds()) ++ok;
        if (!r.p.is_zero()) {
            ++controls;
            if (!r.corrupted_residual.is_zero()) ++controls_ok;
        }
    }
    std::ostringstream d;
    d << ok << "/" << cases.size() << " models with exactly zero residual; negative control nonzero in " << controls_ok
      << "/" << controls << " models with P != 0";
    return {ok == static_cast<int>(cases.size()) && cases.size() >= kIdentityModels && controls > 0 && controls_ok == controls,
            d.str()};
}

Outcome lie_correctness() {
    int combos = 0, ok = 0;
    std::string first_bad;
    for (const char* name : {"sl2", "sl3", "sl4", "gl2", "gl3", "sp4", "sp6", "so4", "so5", "so6"})
        for (const char* f : {"trivial", "torus", "borel"}) {
            ++combos;
            const auto c = report::lie_check(name, f, 17);
            if (c.passed()) ++ok;
            else if (first_bad.empty()) first_bad = std::string(name) + "/" + f;
        }
    std::ostringstream d;
    d << ok << "/" << combos << " group/framing pairs with zero invariance residual and zero containment failures";
    if (!first_bad.empty()) d << "; first failure " << first_bad;
    return {ok == combos, d.str()};
}

Outcome flow_conservation() {
    const auto t0 = std::chrono::steady_clock::now();
    const lie::Algebra g(lie::parse_group("sl2"));
    double worst = 0;
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto m = random_model("sl2", 3, lie::FramingKind::Trivial, 70 + seed);
        const auto obs = gaudin::hitchin_observables(g, m.curve);
        std::vector<Matrix> start;
        for (const auto& a : m.residues) start.push_back(kFlowScale * a);
        const auto r = gaudin::hamiltonian_flow(g, m.curve, start, obs[seed % obs.size()],
                                                gaudin::FlowOptions{kFlowTime, kFlowSteps, kFlowDrift, 0});
        worst = std::max(worst, r.max_drift);
        if (r.accepted && r.max_drift < kFlowDrift) ++ok;
    }
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << ok << "/4 trajectories, max relative drift " << worst << ", " << s << " s";
    return {ok == 4 && s < kFlowSeconds, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected_fail;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ',')) expected_fail.insert(std::stoi(item));
        } else {
            std::fprintf(stderr, "usage: %s [--expect-fail i,j,...]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"dimension identity grid", dimension_grid},
        {"framed-torsor bookkeeping", framed_torsor},
        {"spectral-genus identity", spectral_genus_identity},
        {"Poisson commutativity", poisson_commutativity},
        {"symplectic pairing", symplectic_pairing},
        {"Poisson identity dphi Phi^-1 dphi* = P", poisson_identity},
        {"Lie-theoretic correctness", lie_correctness},
        {"flow conservation", flow_conservation},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const int id = static_cast<int>(i) + 1;
        if (!o.pass) failed.insert(id);
        std::printf("[%s] %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(),
                    !o.pass && expected_fail.count(id) ? " (known failure)" : "");
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
    return failed == expected_fail ? 0 : 1;
}
