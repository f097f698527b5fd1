#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spfem/greenfn.hpp"
#include "spfem/linsolve.hpp"
#include "spfem/problem.hpp"

namespace spfem {

inline constexpr std::string_view kVersion = "1.0.0";

enum class RunMode { Errors, Rates, Green, Field, Interp, Mms };
enum class ProblemKind { Example51, Mms };

std::string_view mode_name(RunMode m);
std::string_view problem_name(ProblemKind p);

struct RunConfig {
    RunMode mode = RunMode::Errors;
    ProblemKind problem = ProblemKind::Example51;
    std::vector<double> eps_list{1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
    std::vector<int> N_list{16, 32, 64, 128, 256};
    double alpha = 2.0;
    double beta = 1.0;
    int quad_order = 3;
    double tol = 1e-10;
    int max_iter = 20000;
    KrylovMethod method = KrylovMethod::Gmres;
    unsigned threads = 1;
    LayerKind layer_template = LayerKind::InteriorX;  // interp mode only
    std::string output;  // empty: "<mode>.csv" (field mode: "field.txt")
    std::array<std::optional<ProbePoint>, 4> probes;  // indexed by Region

    ProblemSpec make_problem(double eps) const;
    SolveOptions solve_options() const;
    std::string output_path() const;
};

/// Parse error naming the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Parses `key=value` lines. Blank lines and lines starting with '#' are
/// ignored. List values are comma separated. Unknown keys, malformed
/// numbers and invalid mesh parameters throw ConfigError.
RunConfig parse_config(std::string_view text);

/// Applies one key=value pair to an existing config.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Cross-field checks (eps range per problem, N divisibility).
void validate(const RunConfig& cfg);

/// Canonical `key=value` lines that reproduce the config via parse_config.
std::vector<std::string> describe(const RunConfig& cfg);

}  // namespace spfem
