// config.hpp: Scenario configuration documents (JSON)
//
// A scenario names a model with a parameters block, a sampling grid, the
// tasks to run, optional tolerance overrides, and an output location. Unknown
// keys are rejected; every error message names the offending key path.

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tclgen/lindblad.hpp"
#include "tclgen/scalar_fn.hpp"

namespace tclgen::config {

using Json = nlohmann::json;

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
    double cpt = 1e-10;
    double lindblad = 1e-10;
    double markov = 1e-8;
    double compare = 1e-6;
    double consistency = 1e-6;
    int quadrature_nodes = 32;

    /// Applies one override; throws ValidationError for unknown keys or
    /// unparsable / non-positive values.
    void set(const std::string& key, const std::string& value);
};

enum class OutputFormat { csv, json };

struct GridSpec {
    double t0 = 0.0;
    double t_end = 1.0;
    int n_samples = 11;
};

struct ScenarioConfig {
    std::string model;
    Json parameters = Json::object();
    GridSpec grid;
    std::vector<std::string> tasks;
    Tolerances tolerances;
    OutputFormat format = OutputFormat::csv;
    std::string output_path = ".";
    std::optional<std::vector<std::pair<double, double>>> probe_pairs;
};

inline const std::vector<std::string>& known_models()
{
    static const std::vector<std::string> names{"two_rate", "pure_decoherence", "sigma_z_limit", "lindblad",
                                                "linear_z"};
    return names;
}

inline const std::vector<std::string>& known_tasks()
{
    static const std::vector<std::string> names{"propagate", "generator", "certify", "markov_probe", "compare",
                                                "scan"};
    return names;
}

ScenarioConfig parse_scenario(const Json& doc);
ScenarioConfig load_scenario(const std::string& path);

/// Throws ValidationError naming `where.key` for keys outside `allowed`.
void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed);
const Json& require_key(const Json& obj, const char* key, const std::string& where);

// Building blocks, exposed for tests. `where` is the key path used in errors.
CMatrix parse_matrix(const Json& j, const std::string& where);
ScalarFn parse_scalar_fn(const Json& j, const std::string& where);
LindbladSpec parse_lindblad_spec(const Json& j, const std::string& where);

Json to_json(const ScalarFn& f);
Json to_json(const CMatrix& m);

} // namespace tclgen::config
