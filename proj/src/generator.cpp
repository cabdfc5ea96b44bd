// generator.cpp: Exponent families and the main-formula local generator

#include "tclgen/generator.hpp"

#include <cmath>
#include <sstream>

#include "tclgen/quadrature.hpp"

namespace tclgen {

namespace {

std::string time_str(double t)
{
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

} // namespace

ZFamily ZFamily::linear(std::vector<Term> terms, double t0, bool homogeneous)
{
    if (terms.empty()) throw ValidationError("ZFamily: linear family needs at least one term");
    if (!std::isfinite(t0)) throw ValidationError("ZFamily: t0 must be finite");
    if (!homogeneous && t0 < 0.0) {
        throw DomainError("ZFamily: inhomogeneous schedules are defined for t >= 0 only");
    }
    const int d = terms.front().generator.dim();
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (terms[k].generator.dim() != d) {
            throw DimensionError("ZFamily: generator " + std::to_string(k) + " has mismatched dimension");
        }
        const Verdict v = is_lindblad_generator(terms[k].generator);
        if (!v.passed) {
            throw ValidationError("ZFamily: generator " + std::to_string(k)
                                  + " is not a Lindblad generator: " + v.witness->description);
        }
        if (!terms[k].coefficient.is_real()) {
            throw ValidationError("ZFamily: coefficient " + std::to_string(k) + " must be real ("
                                  + terms[k].coefficient.describe() + ")");
        }
    }
    ZFamily zf;
    zf.dim_ = d;
    zf.t0_ = t0;
    zf.homogeneous_ = homogeneous;
    zf.terms_ = std::move(terms);
    return zf;
}

ZFamily ZFamily::callable(int dim, ZCallable z, double t0)
{
    if (!z) throw ValidationError("ZFamily: empty callable");
    ZFamily zf;
    zf.dim_ = dim;
    zf.t0_ = t0;
    zf.callable_ = std::move(z);
    const SuperOp at0 = zf.callable_(t0, t0);
    if (at0.dim() != dim) throw DimensionError("ZFamily: callable returned wrong dimension");
    if (max_abs(at0) > 1e-12) {
        throw ValidationError("ZFamily: Z(t0, t0) must vanish, got norm " + time_str(max_abs(at0)));
    }
    return zf;
}

ZFamily ZFamily::with_initial_time(double s) const
{
    ZFamily out = *this;
    out.t0_ = s;
    if (!is_linear() && max_abs(out.callable_(s, s)) > 1e-12) {
        throw ValidationError("ZFamily: Z(s, s) must vanish for the restarted family");
    }
    if (is_linear() && !homogeneous_ && s < 0.0) {
        throw DomainError("ZFamily: inhomogeneous schedules are defined for t >= 0 only");
    }
    return out;
}

void ZFamily::require_in_domain(double t, const char* what) const
{
    if (!(t >= t0_)) {
        throw DomainError(std::string(what) + ": t = " + time_str(t) + " precedes t0 = " + time_str(t0_));
    }
}

std::vector<double> ZFamily::integrated_coefficients(double t) const
{
    if (!is_linear()) throw ValidationError("ZFamily: integrated coefficients need a linear family");
    require_in_domain(t, "z_at");
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) {
        if (homogeneous_) {
            out.push_back(term.coefficient.real_integral(t - t0_));
        } else {
            out.push_back(term.coefficient.real_integral(t) - term.coefficient.real_integral(t0_));
        }
    }
    return out;
}

std::vector<double> ZFamily::coefficients(double t) const
{
    if (!is_linear()) throw ValidationError("ZFamily: coefficients need a linear family");
    require_in_domain(t, "x_at");
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) {
        out.push_back(term.coefficient.real_at(homogeneous_ ? t - t0_ : t));
    }
    return out;
}

SuperOp ZFamily::z(double t) const
{
    require_in_domain(t, "z_at");
    if (!is_linear()) return callable_(t, t0_);
    const auto a = integrated_coefficients(t);
    CMatrix m = CMatrix::Zero(dim_ * dim_, dim_ * dim_);
    for (std::size_t k = 0; k < terms_.size(); ++k) m += a[k] * terms_[k].generator.matrix();
    return SuperOp(dim_, std::move(m));
}

SuperOp ZFamily::x(double t) const
{
    require_in_domain(t, "x_at");
    if (is_linear()) {
        const auto a = coefficients(t);
        CMatrix m = CMatrix::Zero(dim_ * dim_, dim_ * dim_);
        for (std::size_t k = 0; k < terms_.size(); ++k) m += a[k] * terms_[k].generator.matrix();
        return SuperOp(dim_, std::move(m));
    }
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    if (t - h >= t0_) {
        const CMatrix d = callable_(t + h, t0_).matrix() - callable_(t - h, t0_).matrix();
        return SuperOp(dim_, d / (2.0 * h));
    }
    const CMatrix d = -3.0 * callable_(t, t0_).matrix() + 4.0 * callable_(t + h, t0_).matrix()
                      - callable_(t + 2.0 * h, t0_).matrix();
    return SuperOp(dim_, d / (2.0 * h));
}

SuperOp z_at(const ZFamily& zf, double t)
{
    return zf.z(t);
}

SuperOp x_at(const ZFamily& zf, double t)
{
    return zf.x(t);
}

// ---------------------------------------------------------------------------

MainFormulaMismatch::MainFormulaMismatch(double t, SuperOp quadrature, SuperOp frechet, const std::string& hint)
    : ConsistencyError("local_generator: quadrature and Frechet evaluations disagree by "
                           + time_str(distance(quadrature, frechet)) + " at t = " + time_str(t)
                           + (hint.empty() ? "" : " (" + hint + ")"),
                       distance(quadrature, frechet)),
      time_(t), quadrature_(std::move(quadrature)), frechet_(std::move(frechet))
{
}

SuperOp main_formula_quadrature(const SuperOp& z, const SuperOp& x, int nodes)
{
    if (nodes < 4) throw ValidationError("main_formula_quadrature: need at least 4 nodes");
    const auto rule = quad::gauss_legendre(nodes, 0.0, 1.0);
    const CMatrix& zm = z.matrix();
    const CMatrix& xm = x.matrix();
    CMatrix acc = CMatrix::Zero(zm.rows(), zm.cols());
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double s = rule.nodes[k];
        acc += rule.weights[k] * (expm(CMatrix(s * zm)) * xm * expm(CMatrix(-s * zm)));
    }
    return SuperOp(z.dim(), std::move(acc));
}

SuperOp main_formula_frechet(const SuperOp& z, const SuperOp& x)
{
    const FrechetResult fr = expm_frechet(z.matrix(), x.matrix());
    return SuperOp(z.dim(), fr.derivative * expm(CMatrix(-z.matrix())));
}

SuperOp local_generator(const ZFamily& zf, double t, const MainFormulaOptions& opts)
{
    const SuperOp z = zf.z(t);
    const SuperOp x = zf.x(t);
    const bool want_quad = opts.method == MainFormulaMethod::quadrature;
    if (!opts.cross_check) {
        return want_quad ? main_formula_quadrature(z, x, opts.quadrature_nodes) : main_formula_frechet(z, x);
    }
    SuperOp by_quad = main_formula_quadrature(z, x, opts.quadrature_nodes);
    SuperOp by_frechet = main_formula_frechet(z, x);
    if (distance(by_quad, by_frechet) > opts.consistency_tol) {
        // Both routes lose about eps·|e^Z|·|e^{-Z}|; report that so users can
        // tell ill-conditioning from a genuine defect.
        const double cond = max_abs(expm(z)) * max_abs(expm(-1.0 * z));
        throw MainFormulaMismatch(t, std::move(by_quad), std::move(by_frechet),
                                  "conditioning |e^Z|*|e^-Z| ~ " + time_str(cond));
    }
    return want_quad ? by_quad : by_frechet;
}

// ---------------------------------------------------------------------------

GeneratorFamily GeneratorFamily::from_zfamily(ZFamily zf, MainFormulaOptions opts)
{
    const int d = zf.dim();
    const double t0 = zf.t0();
    auto family = std::make_shared<const ZFamily>(std::move(zf));
    Eval eval = [family, opts](double t, double s) {
        if (s == family->t0()) return local_generator(*family, t, opts);
        return local_generator(family->with_initial_time(s), t, opts);
    };
    return GeneratorFamily(d, t0, std::move(eval), Provenance::from_main_formula);
}

GeneratorFamily GeneratorFamily::analytic(int dim, double t0, Eval eval)
{
    return GeneratorFamily(dim, t0, std::move(eval), Provenance::analytic_model);
}

GeneratorFamily GeneratorFamily::user_supplied(int dim, double t0, Eval eval)
{
    return GeneratorFamily(dim, t0, std::move(eval), Provenance::user_supplied);
}

GeneratorFamily GeneratorFamily::constant(const SuperOp& l, double t0)
{
    return user_supplied(l.dim(), t0, [l](double, double) { return l; });
}

std::string to_string(GeneratorFamily::Provenance p)
{
    switch (p) {
    case GeneratorFamily::Provenance::from_main_formula:
        return "from_main_formula";
    case GeneratorFamily::Provenance::analytic_model:
        return "analytic_model";
    case GeneratorFamily::Provenance::user_supplied:
        return "user_supplied";
    }
    return "unknown";
}

Verdict is_commutative(const ZFamily& zf, const std::vector<double>& sample_times, double tol)
{
    if (sample_times.size() < 3) {
        throw ValidationError("is_commutative: need at least 3 sample times");
    }
    if (zf.is_linear() && zf.terms().size() == 1) return Verdict::pass(tol);

    std::vector<SuperOp> xs;
    xs.reserve(sample_times.size());
    for (double t : sample_times) xs.push_back(zf.x(t));

    double worst = 0.0;
    std::size_t wi = 0;
    std::size_t wj = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double c = max_abs(commutator(xs[i], xs[j]));
            if (c > worst) {
                worst = c;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > tol) {
        return Verdict::fail(tol, worst, "X(t) and X(u) do not commute at t = " + time_str(sample_times[wi])
                                             + ", u = " + time_str(sample_times[wj]));
    }
    return Verdict::pass(tol);
}

SuperOp integrated_generator(const GeneratorFamily& gf, double t, double atol)
{
    if (!(t >= gf.t0())) {
        throw DomainError("integrated_generator: t = " + time_str(t) + " precedes t0 = " + time_str(gf.t0()));
    }
    const auto result = quad::integrate([&gf](double tau) -> CMatrix { return gf.eval(tau).matrix(); },
                                        gf.t0(), t, atol);
    return SuperOp(gf.dim(), result.value);
}

} // namespace tclgen
