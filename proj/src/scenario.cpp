// scenario.cpp: Scenario runner: model assembly, tasks, table output

#include "tclgen/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <limits>
#include <set>
#include <sstream>

#include "tclgen/errors.hpp"
#include "tclgen/generator.hpp"
#include "tclgen/models.hpp"
#include "tclgen/propagate.hpp"

namespace tclgen::scenario {

using config::Json;
using config::ScenarioConfig;

namespace {

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// nlohmann writes the shortest round-trip form; tables use a fixed 17 digits.
void write_json_value(std::ostream& out, const Json& v)
{
    switch (v.type()) {
    case Json::value_t::number_float: {
        const double d = v.get<double>();
        if (std::isfinite(d)) {
            out << fmt17(d);
        } else {
            out << "null";
        }
        break;
    }
    case Json::value_t::array: {
        out << "[";
        bool first = true;
        for (const auto& e : v) {
            out << (first ? "" : ", ");
            write_json_value(out, e);
            first = false;
        }
        out << "]";
        break;
    }
    case Json::value_t::object: {
        out << "{";
        bool first = true;
        for (const auto& [key, e] : v.items()) {
            out << (first ? "" : ", ") << Json(key).dump() << ": ";
            write_json_value(out, e);
            first = false;
        }
        out << "}";
        break;
    }
    default:
        out << v.dump();
    }
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Everything a task needs from a configured model.
struct Bundle {
    int dim = 2;
    double t0 = 0.0;
    std::optional<ZFamily> zf;
    std::optional<models::TwoRateModel> two_rate;
    std::optional<models::PureDecoherenceModel> pure;
    bool sigma_z = false;
    std::optional<GeneratorFamily> gf;
    std::function<SuperOp(double)> closed_form;
};

MainFormulaOptions main_formula_options(const config::Tolerances& tol)
{
    MainFormulaOptions o;
    o.quadrature_nodes = tol.quadrature_nodes;
    o.consistency_tol = tol.consistency;
    return o;
}

Bundle build_bundle(const ScenarioConfig& cfg)
{
    const Json& p = cfg.parameters;
    const std::string where = "model.parameters";
    Bundle b;
    b.t0 = cfg.grid.t0;

    if (cfg.model == "two_rate") {
        config::check_keys(p, where, {"a1", "a2", "b_scan"});
        if (cfg.grid.t0 < 0.0) throw ValidationError("grid.t0: two_rate schedules are defined for t >= 0");
        models::TwoRateModel m(config::parse_scalar_fn(config::require_key(p, "a1", where), where + ".a1"),
                               config::parse_scalar_fn(config::require_key(p, "a2", where), where + ".a2"));
        b.two_rate = m;
        b.zf = models::two_rate_zfamily(m).with_initial_time(cfg.grid.t0);
        b.gf = GeneratorFamily::analytic(2, cfg.grid.t0, [m](double t, double s) {
            return models::two_rate_generator(m, t - s).op;
        });
    } else if (cfg.model == "lindblad") {
        config::check_keys(p, where, {"spec"});
        const SuperOp l = build_generator(config::parse_lindblad_spec(config::require_key(p, "spec", where), where + ".spec"));
        b.zf = ZFamily::linear({{l, ScalarFn::constant(1.0)}}, cfg.grid.t0);
        b.gf = GeneratorFamily::from_zfamily(*b.zf, main_formula_options(cfg.tolerances));
    } else if (cfg.model == "linear_z") {
        config::check_keys(p, where, {"terms", "homogeneous"});
        const Json& terms = config::require_key(p, "terms", where);
        if (!terms.is_array() || terms.empty()) throw ValidationError(where + ".terms: expected a non-empty array");
        std::vector<ZFamily::Term> parsed;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::string at = where + ".terms[" + std::to_string(k) + "]";
            config::check_keys(terms[k], at, {"generator", "coefficient"});
            const SuperOp l = build_generator(
                config::parse_lindblad_spec(config::require_key(terms[k], "generator", at), at + ".generator"));
            parsed.push_back({l, config::parse_scalar_fn(config::require_key(terms[k], "coefficient", at),
                                                         at + ".coefficient")});
        }
        bool homogeneous = true;
        if (p.contains("homogeneous")) {
            if (!p.at("homogeneous").is_boolean()) throw ValidationError(where + ".homogeneous: expected a boolean");
            homogeneous = p.at("homogeneous").get<bool>();
        }
        try {
            b.zf = ZFamily::linear(std::move(parsed), cfg.grid.t0, homogeneous);
        } catch (const Error& e) {
            throw ValidationError(where + ".terms: " + e.what());
        }
        b.gf = GeneratorFamily::from_zfamily(*b.zf, main_formula_options(cfg.tolerances));
    } else if (cfg.model == "pure_decoherence") {
        config::check_keys(p, where, {"gamma", "coefficients"});
        if (p.contains("gamma") == p.contains("coefficients")) {
            throw ValidationError(where + ": give exactly one of 'gamma' or 'coefficients'");
        }
        if (p.contains("gamma")) {
            b.pure = models::PureDecoherenceModel::qubit(config::parse_scalar_fn(p.at("gamma"), where + ".gamma"),
                                                         cfg.grid.t0);
        } else {
            const Json& rows = p.at("coefficients");
            if (!rows.is_array() || rows.empty()) throw ValidationError(where + ".coefficients: expected a square array");
            std::vector<std::vector<ScalarFn>> c;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!rows[i].is_array()) throw ValidationError(where + ".coefficients: expected a square array");
                std::vector<ScalarFn> row;
                for (std::size_t j = 0; j < rows[i].size(); ++j) {
                    row.push_back(config::parse_scalar_fn(
                        rows[i][j], where + ".coefficients[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
                }
                c.push_back(std::move(row));
            }
            try {
                b.pure = models::PureDecoherenceModel::general(std::move(c), cfg.grid.t0);
            } catch (const Error& e) {
                throw ValidationError(where + ".coefficients: " + e.what());
            }
        }
        b.dim = b.pure->dim();
        b.gf = models::pure_decoherence_family(*b.pure);
        const models::PureDecoherenceModel m = *b.pure;
        b.closed_form = [m](double t) { return models::pure_decoherence_map(m, t); };
    } else if (cfg.model == "sigma_z_limit") {
        config::check_keys(p, where, {});
        if (cfg.grid.t0 != 0.0) throw ValidationError("grid.t0: sigma_z_limit starts at t0 = 0");
        if (!(cfg.grid.t_end < std::numbers::pi / 2.0)) {
            throw ValidationError("grid.t_end: sigma_z_limit needs t_end < pi/2");
        }
        b.sigma_z = true;
        const SuperOp l0 = models::dephasing_generator();
        // Z(t) = −log(cos t) L₀ is commutative, so L(t) = X(t) = tan(t) L₀.
        b.gf = GeneratorFamily::analytic(2, 0.0, [l0](double t, double) { return std::tan(t) * l0; });
        b.closed_form = [l0](double t) { return expm(-std::log(std::cos(t)) * l0); };
    }

    if (b.zf) {
        b.dim = b.zf->dim();
        const ZFamily zf = *b.zf;
        b.closed_form = [zf](double t) { return exp_map(zf, t); };
    }
    return b;
}

std::vector<std::string> superop_columns(int d)
{
    std::vector<std::string> cols;
    const int n = d * d;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            cols.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
            cols.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
        }
    }
    return cols;
}

void append_superop(std::vector<Cell>& row, const SuperOp& s)
{
    const CMatrix& m = s.matrix();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            row.emplace_back(m(i, j).real());
            row.emplace_back(m(i, j).imag());
        }
    }
}

// Least-squares coefficients of s in the span of {L₁, L₂}, and the residual.
std::tuple<double, double, double> fit_two_rate(const SuperOp& s)
{
    const SuperOp l1 = models::raising_generator();
    const SuperOp l2 = models::lowering_generator();
    Eigen::MatrixXcd basis(16, 2);
    basis.col(0) = Eigen::Map<const CVector>(l1.matrix().data(), 16);
    basis.col(1) = Eigen::Map<const CVector>(l2.matrix().data(), 16);
    const CVector target = Eigen::Map<const CVector>(s.matrix().data(), 16);
    const CVector c = basis.colPivHouseholderQr().solve(target);
    const double residual = (basis * c - target).cwiseAbs().maxCoeff();
    return {c(0).real(), c(1).real(), residual};
}

TaskOutcome task_propagate(const ScenarioConfig& cfg, const Bundle& b, const TimeGrid& grid)
{
    const auto pr = solve_ordered(*b.gf, grid, cfg.tolerances.rtol, cfg.tolerances.atol, cfg.tolerances.cpt);
    TaskOutcome out;
    Table& t = out.table;
    t.task = "propagate";
    t.columns = {"t"};
    for (auto& c : superop_columns(b.dim)) t.columns.push_back(std::move(c));
    t.columns.push_back("min_choi_eig");
    t.columns.push_back("trace_defect");

    std::size_t failed = 0;
    double worst_trace = 0.0;
    for (std::size_t k = 0; k < pr.maps.size(); ++k) {
        std::vector<Cell> row{grid.samples()[k]};
        append_superop(row, pr.maps[k]);
        const double td = trace_defect(pr.maps[k], 1.0);
        row.emplace_back(min_choi_eigenvalue(pr.maps[k]));
        row.emplace_back(td);
        worst_trace = std::max(worst_trace, td);
        if (!pr.cpt_report[k].passed) ++failed;
        t.rows.push_back(std::move(row));
    }
    t.summary = {{"steps", pr.integrator_stats.steps},
                 {"rejected_steps", pr.integrator_stats.rejected_steps},
                 {"est_error", pr.integrator_stats.est_error},
                 {"provenance", to_string(b.gf->provenance())},
                 {"cpt_passed", pr.maps.size() - failed},
                 {"cpt_failed", failed},
                 {"max_trace_defect", worst_trace}};
    out.certification_passed = failed == 0;
    return out;
}

TaskOutcome task_generator(const ScenarioConfig& cfg, const Bundle& b, const TimeGrid& grid)
{
    TaskOutcome out;
    Table& t = out.table;
    t.task = "generator";
    t.columns = {"t"};
    const bool two_rate = b.two_rate.has_value();
    const bool qubit_pure = b.pure && b.pure->dim() == 2;
    if (two_rate) {
        for (const char* c : {"a1", "a2", "f", "b1", "b2", "b1_main", "b2_main", "fit_residual"}) t.columns.emplace_back(c);
    } else if (qubit_pure) {
        for (const char* c : {"b1", "b2"}) t.columns.emplace_back(c);
    }
    for (auto& c : superop_columns(b.dim)) t.columns.push_back(std::move(c));
    t.columns.push_back("trace_annihilation_defect");

    const auto opts = main_formula_options(cfg.tolerances);
    double worst_main_vs_analytic = 0.0;
    double worst_trace = 0.0;
    for (double time : grid.samples()) {
        std::vector<Cell> row{time};
        SuperOp l = SuperOp::zero(b.dim);
        if (two_rate) {
            const auto& m = *b.two_rate;
            const double tau = time - b.t0;
            const auto analytic = models::two_rate_generator(m, tau);
            const SuperOp main = local_generator(*b.zf, time, opts);
            const auto [c1, c2, residual] = fit_two_rate(main);
            worst_main_vs_analytic = std::max(worst_main_vs_analytic, distance(main, analytic.op));
            for (double v : {m.a1.real_at(tau), m.a2.real_at(tau), models::two_rate_f(m, tau), analytic.b1, analytic.b2,
                             c1, c2, residual}) {
                row.emplace_back(v);
            }
            l = main;
        } else if (qubit_pure) {
            const auto bc = models::qubit_dephasing_coefficients(*b.pure, time);
            row.emplace_back(bc.b1);
            row.emplace_back(bc.b2);
            l = b.gf->eval(time);
        } else if (b.zf) {
            l = local_generator(*b.zf, time, opts);
        } else {
            l = b.gf->eval(time);
        }
        append_superop(row, l);
        const double td = trace_defect(l, 0.0);
        worst_trace = std::max(worst_trace, td);
        row.emplace_back(td);
        t.rows.push_back(std::move(row));
    }
    t.summary = {{"max_trace_annihilation_defect", worst_trace}};
    if (two_rate) t.summary["max_main_formula_vs_analytic"] = worst_main_vs_analytic;
    return out;
}

TaskOutcome task_certify(const ScenarioConfig& cfg, const Bundle& b, const TimeGrid& grid)
{
    TaskOutcome out;
    Table& t = out.table;
    t.task = "certify";
    t.columns = {"t", "min_choi_eig", "trace_defect", "cpt_passed", "witness"};
    if (b.zf) t.columns.emplace_back("z_is_lindblad");

    std::size_t failed = 0;
    for (double time : grid.samples()) {
        const SuperOp map = b.closed_form(time);
        const Verdict v = is_cpt_map(map, cfg.tolerances.cpt);
        std::vector<Cell> row{time, min_choi_eigenvalue(map), trace_defect(map, 1.0), v.passed ? 1.0 : 0.0,
                              v.witness ? v.witness->description : std::string()};
        if (b.zf) row.emplace_back(is_lindblad_generator(z_at(*b.zf, time), cfg.tolerances.lindblad).passed ? 1.0 : 0.0);
        if (!v.passed) ++failed;
        t.rows.push_back(std::move(row));
    }
    t.summary = {{"passed", grid.size() - failed}, {"failed", failed}, {"tolerance", cfg.tolerances.cpt}};
    out.certification_passed = failed == 0;
    return out;
}

TaskOutcome task_markov(const ScenarioConfig& cfg, const Bundle& b)
{
    if (!b.zf) throw ValidationError("tasks: markov_probe needs a model with an exponent family (two_rate, lindblad, linear_z)");
    std::vector<std::pair<double, double>> pairs;
    if (cfg.probe_pairs) {
        pairs = *cfg.probe_pairs;
    } else {
        const double t0 = cfg.grid.t0;
        const double span = cfg.grid.t_end - t0;
        pairs = {{t0 + span, t0 + 0.25 * span},
                 {t0 + span, t0 + 0.5 * span},
                 {t0 + span, t0 + 0.75 * span},
                 {t0 + 0.75 * span, t0 + 0.25 * span}};
    }
    const auto report = markovianity_probe(*b.zf, pairs, cfg.tolerances.markov, main_formula_options(cfg.tolerances));
    TaskOutcome out;
    Table& t = out.table;
    t.task = "markov_probe";
    t.columns = {"t", "s", "generator_shift", "composition_defect"};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        t.rows.push_back({pairs[k].first, pairs[k].second, report.generator_shifts[k], report.composition_defects[k]});
    }
    t.summary = {{"max_generator_shift", report.max_generator_shift},
                 {"max_composition_defect", report.max_composition_defect},
                 {"threshold", report.threshold},
                 {"classification", report.classification()}};
    return out;
}

TaskOutcome task_compare(const ScenarioConfig& cfg, const Bundle& b, const TimeGrid& grid)
{
    const auto pr = solve_ordered(*b.gf, grid, cfg.tolerances.rtol, cfg.tolerances.atol, cfg.tolerances.cpt);
    TaskOutcome out;
    Table& t = out.table;
    t.task = "compare";
    t.columns = {"t", "max_abs_deviation", "min_choi_eig", "trace_defect"};
    double worst = 0.0;
    for (std::size_t k = 0; k < pr.maps.size(); ++k) {
        const double time = grid.samples()[k];
        const double dev = distance(pr.maps[k], b.closed_form(time));
        worst = std::max(worst, dev);
        t.rows.push_back({time, dev, min_choi_eigenvalue(pr.maps[k]), trace_defect(pr.maps[k], 1.0)});
    }
    t.summary = {{"max_abs_deviation", worst},
                 {"tolerance", cfg.tolerances.compare},
                 {"rtol", cfg.tolerances.rtol},
                 {"steps", pr.integrator_stats.steps},
                 {"rejected_steps", pr.integrator_stats.rejected_steps}};
    out.certification_passed = worst <= cfg.tolerances.compare;
    return out;
}

TaskOutcome task_scan(const ScenarioConfig& cfg, const Bundle& b, const TimeGrid& grid)
{
    TaskOutcome out;
    Table& t = out.table;
    t.task = "scan";
    if (b.sigma_z) {
        const auto report = models::sigma_z_limit_study(grid.samples(), cfg.tolerances.cpt);
        t.columns = {"t", "offdiag_factor", "cos2", "dist_sigma_z_map", "dist_diag_projection", "cpt_passed"};
        for (const auto& r : report.rows) {
            const double c = std::cos(r.t);
            t.rows.push_back({r.t, r.offdiag_factor, c * c, r.dist_sigma_z_map, r.dist_diag_projection,
                              r.cpt.passed ? 1.0 : 0.0});
        }
        t.summary = {{"all_cpt", report.all_cpt},
                     {"projection_distance_monotone", report.projection_distance_monotone},
                     {"sigma_z_discrepancy", report.sigma_z_discrepancy},
                     {"note", report.note}};
        out.certification_passed = report.all_cpt;
        return out;
    }
    if (!b.two_rate) throw ValidationError("tasks: scan is available for two_rate and sigma_z_limit only");

    const auto& m = *b.two_rate;
    t.columns = {"t", "A1", "A2", "A", "f", "F", "B1", "B2", "B_is_lindblad", "nu1", "nu2", "disentangle_defect"};
    double min_b = std::numeric_limits<double>::infinity();
    double worst_defect = 0.0;
    for (double time : grid.samples()) {
        const double tau = time - b.t0;
        const auto bb = models::two_rate_B(m, tau, cfg.tolerances.lindblad);
        const auto dis = models::two_rate_disentangle(m, tau);
        min_b = std::min({min_b, bb.B1, bb.B2});
        worst_defect = std::max(worst_defect, dis.defect);
        t.rows.push_back({time, m.A1(tau), m.A2(tau), m.A(tau), models::two_rate_f(m, tau),
                          models::two_rate_F(m, tau), bb.B1, bb.B2, bb.lindblad_verdict.passed ? 1.0 : 0.0, dis.nu1,
                          dis.nu2, dis.defect});
    }
    t.summary = {{"min_B", min_b}, {"max_disentangle_defect", worst_defect}};

    if (cfg.parameters.contains("b_scan")) {
        const std::string where = "model.parameters.b_scan";
        const Json& s = cfg.parameters.at("b_scan");
        config::check_keys(s, where, {"breakpoints", "values"});
        auto list = [&](const char* key) {
            const Json& j = config::require_key(s, key, where);
            if (!j.is_array()) throw ValidationError(where + "." + key + ": expected an array of numbers");
            std::vector<double> v;
            for (const auto& x : j) {
                if (!x.is_number()) throw ValidationError(where + "." + key + ": expected an array of numbers");
                v.push_back(x.get<double>());
            }
            return v;
        };
        std::vector<double> taus;
        for (double time : grid.samples()) taus.push_back(time - b.t0);
        models::BScanReport report;
        try {
            report = models::two_rate_B_scan(list("breakpoints"), list("values"), taus, cfg.tolerances.lindblad);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        Table extra;
        extra.task = "scan_schedules";
        extra.columns = {"schedule1", "schedule2", "min_B", "at_time", "min_A"};
        for (const auto& e : report.entries) {
            extra.rows.push_back({e.schedule1, e.schedule2, e.min_B, e.at_time + b.t0, e.min_A});
        }
        extra.summary = {{"schedules", report.entries.size()},
                         {"global_min_B_over_cpt_schedules", report.global_min_B},
                         {"negative_B_count", report.negative_count}};
        out.extra.push_back(std::move(extra));
    }
    return out;
}

void print_summary(std::ostream& out, const Table& t)
{
    out << "== " << t.task << " ==\n";
    static const std::set<std::string> key_columns{
        "t", "s", "min_choi_eig", "trace_defect", "max_abs_deviation", "generator_shift", "composition_defect",
        "b1", "b2", "B1", "B2", "offdiag_factor", "dist_diag_projection"};
    std::vector<int> shown;
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
        if (key_columns.count(t.columns[k])) shown.push_back(static_cast<int>(k));
    }
    if (!shown.empty()) {
        for (int k : shown) out << std::setw(24) << t.columns[static_cast<std::size_t>(k)];
        out << "\n";
        for (const auto& row : t.rows) {
            for (int k : shown) {
                const Cell& c = row[static_cast<std::size_t>(k)];
                if (const double* d = std::get_if<double>(&c)) {
                    out << std::setw(24) << fmt17(*d);
                } else {
                    out << std::setw(24) << std::get<std::string>(c);
                }
            }
            out << "\n";
        }
    }
    for (const auto& [key, value] : t.summary.items()) out << "  " << key << ": " << value.dump() << "\n";
}

} // namespace

void emit_table(const Table& table, config::OutputFormat format, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write output file '" + path + "'");
    if (format == config::OutputFormat::csv) {
        for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << csv_escape(table.columns[k]);
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (k) out << ",";
                if (const double* d = std::get_if<double>(&row[k])) {
                    out << fmt17(*d);
                } else {
                    out << csv_escape(std::get<std::string>(row[k]));
                }
            }
            out << "\n";
        }
    } else {
        out << "{\n \"schema_version\": \"1\",\n \"task\": " << Json(table.task).dump() << ",\n \"columns\": ";
        write_json_value(out, Json(table.columns));
        out << ",\n \"rows\": [";
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            out << (r ? ",\n  [" : "\n  [");
            for (std::size_t k = 0; k < table.rows[r].size(); ++k) {
                if (k) out << ", ";
                if (const double* d = std::get_if<double>(&table.rows[r][k])) {
                    write_json_value(out, Json(*d));
                } else {
                    out << Json(std::get<std::string>(table.rows[r][k])).dump();
                }
            }
            out << "]";
        }
        out << (table.rows.empty() ? "],\n \"summary\": " : "\n ],\n \"summary\": ");
        write_json_value(out, table.summary);
        out << "\n}\n";
    }
    out.flush();
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

Table read_json_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open table '" + path + "'");
    const Json doc = Json::parse(in);
    if (doc.at("schema_version") != "1") throw ValidationError("unsupported schema_version");
    Table t;
    t.task = doc.at("task").get<std::string>();
    t.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& r : doc.at("rows")) {
        std::vector<Cell> row;
        for (const auto& c : r) {
            if (c.is_string()) {
                row.emplace_back(c.get<std::string>());
            } else if (c.is_null()) {
                row.emplace_back(std::numeric_limits<double>::quiet_NaN());
            } else {
                row.emplace_back(c.get<double>());
            }
        }
        t.rows.push_back(std::move(row));
    }
    t.summary = doc.at("summary");
    return t;
}

TaskOutcome run_task(const ScenarioConfig& cfg, const std::string& task)
{
    const Bundle b = build_bundle(cfg);
    const TimeGrid grid = TimeGrid::uniform(cfg.grid.t0, cfg.grid.t_end, cfg.grid.n_samples);
    if (task == "propagate") return task_propagate(cfg, b, grid);
    if (task == "generator") return task_generator(cfg, b, grid);
    if (task == "certify") return task_certify(cfg, b, grid);
    if (task == "markov_probe") return task_markov(cfg, b);
    if (task == "compare") return task_compare(cfg, b, grid);
    if (task == "scan") return task_scan(cfg, b, grid);
    throw ValidationError("tasks: unknown task '" + task + "'");
}

int run(const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    try {
        ScenarioConfig cfg = config::load_scenario(opts.config_path);
        for (const auto& kv : opts.tol_overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ValidationError("--tol-override: expected key=value, got '" + kv + "'");
            cfg.tolerances.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        const std::string dir = opts.out_dir.empty() ? cfg.output_path : opts.out_dir;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
        const std::string ext = cfg.format == config::OutputFormat::csv ? ".csv" : ".json";

        bool all_passed = true;
        for (const auto& task : cfg.tasks) {
            TaskOutcome outcome = run_task(cfg, task);
            emit_table(outcome.table, cfg.format, (std::filesystem::path(dir) / (task + ext)).string());
            for (const auto& extra : outcome.extra) {
                emit_table(extra, cfg.format, (std::filesystem::path(dir) / (extra.task + ext)).string());
            }
            if (!opts.quiet) {
                print_summary(out, outcome.table);
                for (const auto& extra : outcome.extra) {
                    out << "== " << extra.task << " ==\n";
                    for (const auto& [key, value] : extra.summary.items()) out << "  " << key << ": " << value.dump() << "\n";
                }
            }
            if (!outcome.certification_passed) {
                all_passed = false;
                if (!opts.quiet) out << "  certification: FAILED\n";
            }
        }
        return all_passed ? kOk : kCertificationFailed;
    } catch (const IoError& e) {
        err << "error[" << e.category() << "]: " << e.what() << "\n";
        return kIoError;
    } catch (const NumericalError& e) {
        err << "error[" << e.category() << "]: " << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        err << "error[" << e.category() << "]: " << e.what() << "\n";
        return kValidationError;
    } catch (const Json::exception& e) {
        err << "error[validation]: " << e.what() << "\n";
        return kValidationError;
    }
}

} // namespace tclgen::scenario
