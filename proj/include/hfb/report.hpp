#pragma once

#include "hfb/deformation.hpp"
#include "hfb/polynomial.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfb::report {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";
const char* tool_version();

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Csv };

struct RunOptions {
    std::optional<std::string> subcommand;  // overrides config["subcommand"]
    std::optional<std::uint64_t> seed;      // overrides config["seed"]
    std::optional<Format> format;           // overrides config["format"]
};

struct RunResult {
    json report;
    std::string csv;  // filled for csv output of dims grids
    /// 0: every asserted check passed, 1: some asserted check failed, 2: invalid input.
    int exit_code = 0;
    std::vector<std::string> failed;
};

/// Parses `text` as JSON; syntax errors become ConfigError with line and column.
json parse_config(const std::string& text);

/// Runs one job. Invalid input is reported through exit code 2 and report["error"].
RunResult run(const json& config, const RunOptions& opt = {});

/// Model from the "group", "kappa", "points", "framings" and "residues" fields.
defo::FramedHiggsModel model_from_config(const json& config, std::uint64_t seed);

std::string rational_json(const Rational& q);
json matrix_json(const Matrix& m);
json upoly_json(const upoly::UPoly& p);

/// Lie-theoretic audit of one group and framing kind: the invariance residual of the
/// form over basis triples and seeded random triples, and bracket containment of h
/// acting on its annihilator.
struct LieCheck {
    std::string group;
    std::string framing;
    Rational invariance_residual;  // max |sigma([a,c],b) + sigma(c,[a,b])|
    std::size_t containment_failures = 0;
    bool passed() const { return sgn(invariance_residual) == 0 && containment_failures == 0; }
};

LieCheck lie_check(const std::string& group, const std::string& framing, std::uint64_t seed);

}  // namespace hfb::report
