// models.cpp: Pure decoherence, two-rate qubit, and σ_z-limit models

#include "tclgen/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tclgen/quadrature.hpp"

namespace tclgen::models {

namespace {

std::string num(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ScalarFn conjugate(const ScalarFn& f)
{
    switch (f.kind()) {
    case ScalarFn::Kind::constant:
        return ScalarFn::constant(std::conj(f.scale()));
    case ScalarFn::Kind::exp_decay:
        return ScalarFn::exp_decay(std::conj(f.scale()), f.lambda(), -f.omega());
    case ScalarFn::Kind::polynomial:
    case ScalarFn::Kind::piecewise_constant:
        return f;
    }
    return f;
}

// expm1(x)/x, → 1 at x = 0.
double expm1_ratio(double x)
{
    if (std::abs(x) < 1e-8) return 1.0 + 0.5 * x;
    return std::expm1(x) / x;
}

} // namespace

SuperOp dephasing_generator()
{
    return build_generator(LindbladSpec(CMatrix::Zero(2, 2), {{1.0, ops::sigma_z()}}));
}

SuperOp raising_generator()
{
    return build_generator(LindbladSpec(CMatrix::Zero(2, 2), {{1.0, ops::sigma_plus()}}));
}

SuperOp lowering_generator()
{
    return build_generator(LindbladSpec(CMatrix::Zero(2, 2), {{1.0, ops::sigma_minus()}}));
}

// ---------------------------------------------------------------------------

PureDecoherenceModel PureDecoherenceModel::qubit(ScalarFn gamma, double t0)
{
    const ScalarFn one = ScalarFn::constant(1.0);
    return general({{one, gamma}, {conjugate(gamma), one}}, t0);
}

PureDecoherenceModel PureDecoherenceModel::general(std::vector<std::vector<ScalarFn>> coeffs, double t0)
{
    const std::size_t n = coeffs.size();
    if (n < 1) throw ValidationError("PureDecoherenceModel: empty coefficient matrix");
    for (std::size_t m = 0; m < n; ++m) {
        if (coeffs[m].size() != n) {
            throw DimensionError("PureDecoherenceModel: coefficient matrix must be square");
        }
        const ScalarFn& diag = coeffs[m][m];
        if (diag.kind() != ScalarFn::Kind::constant || diag.scale() != std::complex<double>(1.0, 0.0)) {
            throw ValidationError("PureDecoherenceModel: diagonal coefficient c_" + std::to_string(m) + std::to_string(m)
                                  + " must be the constant 1");
        }
    }
    if (!std::isfinite(t0)) throw ValidationError("PureDecoherenceModel: t0 must be finite");
    PureDecoherenceModel model;
    model.coeffs_ = std::move(coeffs);
    model.t0_ = t0;
    // Hermiticity of the coefficient matrix, probed at a few elapsed times.
    for (double tau : {0.0, 0.37, 1.0, 2.9}) {
        const CMatrix c = model.coefficient_matrix(model.t0_ + tau);
        if (max_abs(c - c.adjoint()) > 1e-12) {
            throw ValidationError("PureDecoherenceModel: coefficient matrix is not Hermitian (c_mn must equal conj(c_nm))");
        }
    }
    return model;
}

const ScalarFn& PureDecoherenceModel::coefficient(int m, int n) const
{
    return coeffs_.at(static_cast<std::size_t>(m)).at(static_cast<std::size_t>(n));
}

CMatrix PureDecoherenceModel::coefficient_matrix(double t) const
{
    if (!(t >= t0_)) throw DomainError("PureDecoherenceModel: t = " + num(t) + " precedes t0");
    const int n = dim();
    CMatrix c(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) c(i, j) = coefficient(i, j)(t - t0_);
    }
    return c;
}

CMatrix PureDecoherenceModel::coefficient_derivative(double t) const
{
    if (!(t >= t0_)) throw DomainError("PureDecoherenceModel: t = " + num(t) + " precedes t0");
    const int n = dim();
    CMatrix c(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) c(i, j) = coefficient(i, j).derivative(t - t0_);
    }
    return c;
}

SuperOp pure_decoherence_map(const PureDecoherenceModel& m, double t)
{
    const CMatrix c = m.coefficient_matrix(t);
    const double lo = hermitian_eigvals(c).front();
    if (lo < -tol::kPsd) {
        throw ValidationError("pure_decoherence_map: coefficient matrix is not PSD at t = " + num(t)
                              + " (eigenvalue " + num(lo) + ")");
    }
    const int n = m.dim();
    // Σ c_mn P_m·P_n acts entrywise: (Λρ)_mn = c_mn ρ_mn.
    CMatrix s = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) s += c(i, j) * sandwich_superop(ops::projector(n, i), ops::projector(n, j)).matrix();
    }
    return SuperOp(n, std::move(s));
}

SuperOp pure_decoherence_generator(const PureDecoherenceModel& m, double t)
{
    const CMatrix c = m.coefficient_matrix(t);
    const CMatrix dc = m.coefficient_derivative(t);
    const int n = m.dim();
    CMatrix s = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (std::abs(c(i, j)) <= 1e-14) {
                throw SingularityError("pure_decoherence_generator: c_" + std::to_string(i + 1) + std::to_string(j + 1)
                                       + " vanishes at t = " + num(t));
            }
            const Complex alpha = dc(i, j) / c(i, j);
            s += alpha * sandwich_superop(ops::projector(n, i), ops::projector(n, j)).matrix();
        }
    }
    return SuperOp(n, std::move(s));
}

QubitDephasingCoefficients qubit_dephasing_coefficients(const PureDecoherenceModel& m, double t)
{
    if (m.dim() != 2) throw DimensionError("qubit_dephasing_coefficients: model is not a qubit");
    const double tau = t - m.t0();
    const Complex g = m.coefficient(0, 1)(tau);
    if (std::abs(g) <= 1e-14) {
        throw SingularityError("qubit_dephasing_coefficients: gamma vanishes at t = " + num(t));
    }
    const Complex ratio = m.coefficient(0, 1).derivative(tau) / (2.0 * g);
    return {ratio.imag(), ratio.real()};
}

SuperOp qubit_dephasing_generator(double b1, double b2)
{
    const CMatrix sz = ops::sigma_z();
    const CMatrix id = CMatrix::Identity(2, 2);
    const SuperOp comm = sandwich_superop(sz, id) - sandwich_superop(id, sz);
    const SuperOp deph = sandwich_superop(sz, sz) - SuperOp::identity(2);
    return Complex(0.0, b1) * comm - b2 * deph;
}

GeneratorFamily pure_decoherence_family(const PureDecoherenceModel& m)
{
    return GeneratorFamily::analytic(m.dim(), m.t0(), [m](double t, double s) {
        if (s != m.t0()) {
            throw ValidationError("pure_decoherence_family: the model fixes t0 = " + num(m.t0()));
        }
        return pure_decoherence_generator(m, t);
    });
}

// ---------------------------------------------------------------------------

TwoRateModel::TwoRateModel(ScalarFn rate1, ScalarFn rate2) : a1(std::move(rate1)), a2(std::move(rate2))
{
    if (!a1.is_real() || !a2.is_real()) throw ValidationError("TwoRateModel: rates must be real");
}

double TwoRateModel::A1(double t) const { return a1.real_integral(t); }
double TwoRateModel::A2(double t) const { return a2.real_integral(t); }
double TwoRateModel::A(double t) const { return A1(t) + A2(t); }

double TwoRateModel::wronskian(double t) const
{
    return A1(t) * a2.real_at(t) - A2(t) * a1.real_at(t);
}

double two_rate_f(const TwoRateModel& m, double t)
{
    if (!(t >= 0.0)) throw DomainError("two_rate_f: t must be >= 0");
    const double a = m.A(t);
    const double w = m.wronskian(t);
    // (1 + (e^{−A} − 1)/A)/A
    double h;
    if (std::abs(a) < 1e-4) {
        h = 0.5 - a / 6.0 + a * a / 24.0;
    } else {
        h = (a + std::expm1(-a)) / (a * a);
    }
    return w * h;
}

double two_rate_F(const TwoRateModel& m, double t, double atol)
{
    if (!(t >= 0.0)) throw DomainError("two_rate_F: t must be >= 0");
    // Split at schedule breakpoints so each panel is smooth.
    std::vector<double> cuts{0.0};
    for (const ScalarFn* fn : {&m.a1, &m.a2}) {
        for (double b : fn->breakpoints()) {
            if (b < t) cuts.push_back(b);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(t);
    double total = 0.0;
    const double per_panel = atol / static_cast<double>(cuts.size());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const auto r = quad::integrate([&m](double u) { return two_rate_f(m, u); }, cuts[k], cuts[k + 1], per_panel);
        total += r.value;
    }
    return total;
}

TwoRateGenerator two_rate_generator(const TwoRateModel& m, double t)
{
    const double f = two_rate_f(m, t);
    const double b1 = m.a1.real_at(t) + f;
    const double b2 = m.a2.real_at(t) - f;
    return {b1, b2, b1 * raising_generator() + b2 * lowering_generator()};
}

Disentangling two_rate_disentangle(const TwoRateModel& m, double t)
{
    if (!(t >= 0.0)) throw DomainError("two_rate_disentangle: t must be >= 0");
    const double a1 = m.A1(t);
    const double a2 = m.A2(t);
    const double a = a1 + a2;
    // ν₁ = A/(A₁e^{−A} + A₂), ν₂ = (A₁ + A₂e^{A})/A, rewritten with expm1(x)/x
    // so that the A → 0 limit is regular.
    const double den1 = 1.0 - a1 * expm1_ratio(-a);
    const double nu1 = 1.0 / den1;
    const double nu2 = 1.0 + a2 * expm1_ratio(a);
    if (!(nu1 > 0.0) || !(nu2 > 0.0) || !std::isfinite(nu1)) {
        throw DomainError("two_rate_disentangle: nu_k must be positive at t = " + num(t));
    }
    const SuperOp l1 = raising_generator();
    const SuperOp l2 = lowering_generator();
    SuperOp lhs = expm(a1 * l1 + a2 * l2);
    SuperOp rhs = expm(std::log(nu1) * l1) * expm(std::log(nu2) * l2);
    const double defect = distance(lhs, rhs);
    return {nu1, nu2, std::move(lhs), std::move(rhs), defect};
}

TwoRateIntegrated two_rate_B(const TwoRateModel& m, double t, double tol)
{
    const double f_int = two_rate_F(m, t);
    const double b1 = m.A1(t) + f_int;
    const double b2 = m.A2(t) - f_int;
    const SuperOp op = b1 * raising_generator() + b2 * lowering_generator();
    return {b1, b2, is_lindblad_generator(op, tol)};
}

ZFamily two_rate_zfamily(const TwoRateModel& m)
{
    return ZFamily::linear({{raising_generator(), m.a1}, {lowering_generator(), m.a2}}, 0.0, true);
}

GeneratorFamily two_rate_generator_family(const TwoRateModel& m)
{
    return GeneratorFamily::analytic(2, 0.0, [m](double t, double s) {
        if (!(t >= s)) throw DomainError("two_rate_generator_family: t precedes t0");
        return two_rate_generator(m, t - s).op;
    });
}

BScanReport two_rate_B_scan(const std::vector<double>& breakpoints, const std::vector<double>& values,
                            const std::vector<double>& times, double tol)
{
    if (values.empty() || times.empty()) throw ValidationError("two_rate_B_scan: empty values or times");
    const std::size_t pieces = breakpoints.size() + 1;

    // Every assignment of `values` to the pieces, in lexicographic order.
    std::vector<ScalarFn> schedules;
    std::vector<std::size_t> idx(pieces, 0);
    while (true) {
        std::vector<double> v(pieces);
        for (std::size_t k = 0; k < pieces; ++k) v[k] = values[idx[k]];
        schedules.push_back(ScalarFn::piecewise_constant(breakpoints, v));
        std::size_t k = pieces;
        while (k > 0 && ++idx[k - 1] == values.size()) {
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
    }

    BScanReport report;
    report.global_min_B = std::numeric_limits<double>::infinity();
    for (const auto& s1 : schedules) {
        for (const auto& s2 : schedules) {
            const TwoRateModel model(s1, s2);
            BScanEntry entry{s1.describe(), s2.describe(), std::numeric_limits<double>::infinity(), 0.0,
                             std::numeric_limits<double>::infinity()};
            for (double t : times) {
                const double f_int = two_rate_F(model, t);
                const double b = std::min(model.A1(t) + f_int, model.A2(t) - f_int);
                if (b < entry.min_B) {
                    entry.min_B = b;
                    entry.at_time = t;
                }
                entry.min_A = std::min({entry.min_A, model.A1(t), model.A2(t)});
            }
            if (entry.min_A >= -tol && entry.min_B < -tol) ++report.negative_count;
            if (entry.min_A >= -tol) report.global_min_B = std::min(report.global_min_B, entry.min_B);
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

SigmaZLimitReport sigma_z_limit_study(const std::vector<double>& t_values, double tol)
{
    const SuperOp l0 = dephasing_generator();
    const SuperOp flip = sandwich_superop(ops::sigma_z(), ops::sigma_z());
    const SuperOp projection = 0.5 * (SuperOp::identity(2) + flip);
    CMatrix e12 = CMatrix::Zero(2, 2);
    e12(0, 1) = 1.0;

    SigmaZLimitReport report;
    double prev = std::numeric_limits<double>::infinity();
    for (double t : t_values) {
        if (!(t >= 0.0) || !(t < std::numbers::pi / 2.0)) {
            throw DomainError("sigma_z_limit_study: t = " + num(t) + " outside [0, pi/2)");
        }
        const SuperOp lambda = expm(-std::log(std::cos(t)) * l0);
        SigmaZLimitRow row{t, lambda.apply(e12)(0, 1).real(), distance(lambda, flip), distance(lambda, projection),
                           is_cpt_map(lambda, tol)};
        report.all_cpt = report.all_cpt && row.cpt.passed;
        if (row.dist_diag_projection > prev) report.projection_distance_monotone = false;
        prev = row.dist_diag_projection;
        report.rows.push_back(row);
    }
    if (!report.rows.empty()) {
        const auto& last = report.rows.back();
        report.sigma_z_discrepancy = last.dist_diag_projection < last.dist_sigma_z_map;
        std::ostringstream os;
        os.precision(6);
        os << "at t = " << last.t << ": distance to rho -> sigma_z rho sigma_z is " << last.dist_sigma_z_map
           << ", distance to the diagonal projection is " << last.dist_diag_projection;
        if (report.sigma_z_discrepancy) {
            os << "; the limit approached is the diagonal projection, not rho -> sigma_z rho sigma_z";
        }
        report.note = os.str();
    }
    return report;
}

} // namespace tclgen::models
