// config.cpp: Scenario configuration parsing and validation

#include "tclgen/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "tclgen/errors.hpp"

namespace tclgen::config {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            fail(where + "." + key, "unknown key");
        }
    }
}

const Json& require(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key)) fail(where + "." + key, "missing required key");
    return obj.at(key);
}

double number(const Json& j, const std::string& where)
{
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "expected a finite number");
    return v;
}

std::complex<double> complex_number(const Json& j, const std::string& where)
{
    if (j.is_number()) return number(j, where);
    reject_unknown(j, where, {"re", "im"});
    const double re = j.contains("re") ? number(j.at("re"), where + ".re") : 0.0;
    const double im = j.contains("im") ? number(j.at("im"), where + ".im") : 0.0;
    return {re, im};
}

std::vector<double> number_list(const Json& j, const std::string& where)
{
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

int positive_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() <= 0 || j.get<long long>() > 1'000'000) {
        fail(where, "expected a positive integer");
    }
    return static_cast<int>(j.get<long long>());
}

template <typename F>
auto rethrow_at(const std::string& where, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    } catch (const DimensionError& e) {
        throw ValidationError(where + ": " + e.what());
    } catch (const DomainError& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

} // namespace

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    reject_unknown(obj, where, allowed);
}

const Json& require_key(const Json& obj, const char* key, const std::string& where)
{
    return require(obj, key, where);
}

void Tolerances::set(const std::string& key, const std::string& value)
{
    double v = 0.0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v) || v <= 0.0) {
        fail("tolerances." + key, "expected a positive number, got '" + value + "'");
    }
    if (key == "rtol") {
        rtol = v;
    } else if (key == "atol") {
        atol = v;
    } else if (key == "cpt") {
        cpt = v;
    } else if (key == "lindblad") {
        lindblad = v;
    } else if (key == "markov") {
        markov = v;
    } else if (key == "compare") {
        compare = v;
    } else if (key == "consistency") {
        consistency = v;
    } else if (key == "quadrature_nodes") {
        if (v != std::floor(v) || v < 4 || v > 1000) fail("tolerances.quadrature_nodes", "expected an integer in [4, 1000]");
        quadrature_nodes = static_cast<int>(v);
    } else {
        fail("tolerances." + key, "unknown tolerance key");
    }
}

CMatrix parse_matrix(const Json& j, const std::string& where)
{
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "sigma_x") return ops::sigma_x();
        if (name == "sigma_y") return ops::sigma_y();
        if (name == "sigma_z") return ops::sigma_z();
        if (name == "sigma_plus") return ops::sigma_plus();
        if (name == "sigma_minus") return ops::sigma_minus();
        if (name == "identity2") return ops::identity(2);
        if (name == "zero2") return CMatrix::Zero(2, 2);
        fail(where, "unknown operator preset '" + name + "'");
    }
    reject_unknown(j, where, {"rows", "cols", "entries"});
    const int rows = positive_int(require(j, "rows", where), where + ".rows");
    const int cols = positive_int(require(j, "cols", where), where + ".cols");
    if (rows > 64 || cols > 64) fail(where, "matrix too large");
    CMatrix m = CMatrix::Zero(rows, cols);
    const Json& entries = require(j, "entries", where);
    if (!entries.is_array()) fail(where + ".entries", "expected an array of {row, col, re, im} records");
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string at = where + ".entries[" + std::to_string(k) + "]";
        const Json& e = entries[k];
        reject_unknown(e, at, {"row", "col", "re", "im"});
        const Json& rj = require(e, "row", at);
        const Json& cj = require(e, "col", at);
        if (!rj.is_number_integer() || !cj.is_number_integer()) fail(at, "row and col must be integers");
        const auto r = rj.get<long long>();
        const auto c = cj.get<long long>();
        if (r < 0 || r >= rows || c < 0 || c >= cols) fail(at, "index out of range");
        if (!seen.insert({static_cast<int>(r), static_cast<int>(c)}).second) fail(at, "duplicate entry");
        const double re = e.contains("re") ? number(e.at("re"), at + ".re") : 0.0;
        const double im = e.contains("im") ? number(e.at("im"), at + ".im") : 0.0;
        m(r, c) = Complex(re, im);
    }
    return m;
}

ScalarFn parse_scalar_fn(const Json& j, const std::string& where)
{
    if (!j.is_object()) fail(where, "expected a scalar function descriptor object");
    const Json& kind_j = require(j, "kind", where);
    if (!kind_j.is_string()) fail(where + ".kind", "expected a string");
    const auto kind = kind_j.get<std::string>();
    return rethrow_at(where, [&]() -> ScalarFn {
        if (kind == "constant") {
            reject_unknown(j, where, {"kind", "value"});
            return ScalarFn::constant(complex_number(require(j, "value", where), where + ".value"));
        }
        if (kind == "polynomial") {
            reject_unknown(j, where, {"kind", "coefficients"});
            return ScalarFn::polynomial(number_list(require(j, "coefficients", where), where + ".coefficients"));
        }
        if (kind == "exp_decay") {
            reject_unknown(j, where, {"kind", "c", "lambda", "omega"});
            const auto c = j.contains("c") ? complex_number(j.at("c"), where + ".c") : std::complex<double>(1.0);
            const double lambda = j.contains("lambda") ? number(j.at("lambda"), where + ".lambda") : 0.0;
            const double omega = j.contains("omega") ? number(j.at("omega"), where + ".omega") : 0.0;
            return ScalarFn::exp_decay(c, lambda, omega);
        }
        if (kind == "piecewise_constant") {
            reject_unknown(j, where, {"kind", "breakpoints", "values"});
            return ScalarFn::piecewise_constant(number_list(require(j, "breakpoints", where), where + ".breakpoints"),
                                                number_list(require(j, "values", where), where + ".values"));
        }
        fail(where + ".kind", "unknown scalar function kind '" + kind + "'");
    });
}

LindbladSpec parse_lindblad_spec(const Json& j, const std::string& where)
{
    reject_unknown(j, where, {"dim", "hamiltonian", "noise_terms"});
    std::optional<CMatrix> h;
    if (j.contains("hamiltonian")) h = parse_matrix(j.at("hamiltonian"), where + ".hamiltonian");
    std::vector<NoiseTerm> noise;
    if (j.contains("noise_terms")) {
        const Json& terms = j.at("noise_terms");
        if (!terms.is_array()) fail(where + ".noise_terms", "expected an array");
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::string at = where + ".noise_terms[" + std::to_string(k) + "]";
            reject_unknown(terms[k], at, {"rate", "operator"});
            const double rate = number(require(terms[k], "rate", at), at + ".rate");
            if (rate < 0.0) fail(at + ".rate", "noise term " + std::to_string(k) + " has negative rate");
            noise.push_back({rate, parse_matrix(require(terms[k], "operator", at), at + ".operator")});
        }
    }
    int dim = 0;
    if (j.contains("dim")) dim = positive_int(j.at("dim"), where + ".dim");
    if (h) {
        dim = static_cast<int>(h->rows());
    } else if (!noise.empty()) {
        dim = static_cast<int>(noise.front().op.rows());
    }
    if (dim == 0) fail(where, "cannot infer dimension: give hamiltonian, noise_terms, or dim");
    if (!h) h = CMatrix::Zero(dim, dim);
    return rethrow_at(where, [&] { return LindbladSpec(*h, std::move(noise)); });
}

ScenarioConfig parse_scenario(const Json& doc)
{
    reject_unknown(doc, "config", {"model", "grid", "tasks", "tolerances", "output", "probe_pairs"});
    ScenarioConfig cfg;

    const Json& model = require(doc, "model", "config");
    reject_unknown(model, "model", {"name", "parameters"});
    const Json& name = require(model, "name", "model");
    if (!name.is_string()) fail("model.name", "expected a string");
    cfg.model = name.get<std::string>();
    const auto& models = known_models();
    if (std::find(models.begin(), models.end(), cfg.model) == models.end()) {
        fail("model.name", "unknown model '" + cfg.model + "'");
    }
    if (model.contains("parameters")) {
        if (!model.at("parameters").is_object()) fail("model.parameters", "expected an object");
        cfg.parameters = model.at("parameters");
    }

    const Json& grid = require(doc, "grid", "config");
    reject_unknown(grid, "grid", {"t0", "t_end", "n_samples"});
    cfg.grid.t0 = number(require(grid, "t0", "grid"), "grid.t0");
    cfg.grid.t_end = number(require(grid, "t_end", "grid"), "grid.t_end");
    cfg.grid.n_samples = positive_int(require(grid, "n_samples", "grid"), "grid.n_samples");
    if (cfg.grid.n_samples < 2) fail("grid.n_samples", "need at least 2 samples");
    if (!(cfg.grid.t_end > cfg.grid.t0)) fail("grid.t_end", "must exceed grid.t0");

    const Json& tasks = require(doc, "tasks", "config");
    if (!tasks.is_array() || tasks.empty()) fail("tasks", "expected a non-empty array of task names");
    const auto& known = known_tasks();
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const std::string at = "tasks[" + std::to_string(k) + "]";
        if (!tasks[k].is_string()) fail(at, "expected a string");
        const auto t = tasks[k].get<std::string>();
        if (std::find(known.begin(), known.end(), t) == known.end()) fail(at, "unknown task '" + t + "'");
        if (std::find(cfg.tasks.begin(), cfg.tasks.end(), t) != cfg.tasks.end()) fail(at, "duplicate task '" + t + "'");
        cfg.tasks.push_back(t);
    }

    if (doc.contains("tolerances")) {
        const Json& tol = doc.at("tolerances");
        if (!tol.is_object()) fail("tolerances", "expected an object");
        for (const auto& [key, value] : tol.items()) {
            if (!value.is_number()) fail("tolerances." + key, "expected a number");
            cfg.tolerances.set(key, value.dump());
        }
    }

    if (doc.contains("output")) {
        const Json& out = doc.at("output");
        reject_unknown(out, "output", {"format", "path"});
        if (out.contains("format")) {
            const Json& f = out.at("format");
            if (f == "csv") {
                cfg.format = OutputFormat::csv;
            } else if (f == "json") {
                cfg.format = OutputFormat::json;
            } else {
                fail("output.format", "expected \"csv\" or \"json\"");
            }
        }
        if (out.contains("path")) {
            if (!out.at("path").is_string()) fail("output.path", "expected a string");
            cfg.output_path = out.at("path").get<std::string>();
        }
    }

    if (doc.contains("probe_pairs")) {
        const Json& pairs = doc.at("probe_pairs");
        if (!pairs.is_array() || pairs.empty()) fail("probe_pairs", "expected a non-empty array of [t, s] pairs");
        std::vector<std::pair<double, double>> out;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const std::string at = "probe_pairs[" + std::to_string(k) + "]";
            const auto v = number_list(pairs[k], at);
            if (v.size() != 2) fail(at, "expected [t, s]");
            if (!(v[0] >= v[1] && v[1] >= cfg.grid.t0)) fail(at, "need t >= s >= grid.t0");
            out.emplace_back(v[0], v[1]);
        }
        cfg.probe_pairs = std::move(out);
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("config: malformed JSON (" + std::string(e.what()) + ")");
    }
    return parse_scenario(doc);
}

Json to_json(const ScalarFn& f)
{
    switch (f.kind()) {
    case ScalarFn::Kind::constant:
        return {{"kind", "constant"}, {"value", {{"re", f.scale().real()}, {"im", f.scale().imag()}}}};
    case ScalarFn::Kind::polynomial:
        return {{"kind", "polynomial"}, {"coefficients", f.coefficients()}};
    case ScalarFn::Kind::exp_decay:
        return {{"kind", "exp_decay"},
                {"c", {{"re", f.scale().real()}, {"im", f.scale().imag()}}},
                {"lambda", f.lambda()},
                {"omega", f.omega()}};
    case ScalarFn::Kind::piecewise_constant:
        return {{"kind", "piecewise_constant"}, {"breakpoints", f.breakpoints()}, {"values", f.coefficients()}};
    }
    return nullptr;
}

Json to_json(const CMatrix& m)
{
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) == Complex(0.0, 0.0)) continue;
            entries.push_back({{"row", i}, {"col", j}, {"re", m(i, j).real()}, {"im", m(i, j).imag()}});
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

} // namespace tclgen::config
