// generator.hpp: Exponent families Z(t,t₀) and their local generators
//
// A family Z(t,t₀) with Z(t₀,t₀) = 0 and X = ∂Z/∂t determines the generator
//
//     L(t,t₀) = ∫₀¹ e^{sZ} X e^{−sZ} ds = (d/dt e^{Z}) · e^{−Z},
//
// of the dynamics Λ(t,t₀) = e^{Z(t,t₀)}. Both sides of that identity are
// evaluated independently (Gauss–Legendre quadrature in s and the Fréchet
// derivative of expm) and cross-checked.

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tclgen/errors.hpp"
#include "tclgen/lindblad.hpp"
#include "tclgen/scalar_fn.hpp"
#include "tclgen/superop.hpp"

namespace tclgen {

class ZFamily {
public:
    /// Z(t,t₀) for an arbitrary initial time t₀.
    using ZCallable = std::function<SuperOp(double t, double t0)>;

    struct Term {
        SuperOp generator;
        ScalarFn coefficient;
    };

    /// Z = Σ A_k L_k with A_k(t,t₀) = ∫_{t₀}^t a_k du. Homogeneous families
    /// evaluate a_k at the elapsed time u − t₀, inhomogeneous ones at u.
    /// Every generator must pass is_lindblad_generator and every coefficient
    /// must be real.
    static ZFamily linear(std::vector<Term> terms, double t0, bool homogeneous = true);

    /// Caller-supplied Z. Validates ‖Z(t₀,t₀)‖ ≤ 1e−12.
    static ZFamily callable(int dim, ZCallable z, double t0);

    int dim() const noexcept { return dim_; }
    double t0() const noexcept { return t0_; }
    bool is_linear() const noexcept { return !callable_; }
    bool homogeneous() const noexcept { return homogeneous_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    /// Same family restarted at initial time s.
    ZFamily with_initial_time(double s) const;

    /// A_k(t,t₀) and a_k(t,t₀) for LinearZ; throws for CallableZ.
    std::vector<double> integrated_coefficients(double t) const;
    std::vector<double> coefficients(double t) const;

    SuperOp z(double t) const;
    SuperOp x(double t) const;

private:
    ZFamily() = default;
    void require_in_domain(double t, const char* what) const;

    int dim_ = 0;
    double t0_ = 0.0;
    bool homogeneous_ = true;
    std::vector<Term> terms_;
    ZCallable callable_;
};

SuperOp z_at(const ZFamily& zf, double t);

/// For CallableZ, X is the central difference of Z in t with step
/// 1e−6·max(1,|t|), falling back to a one-sided second-order stencil at t₀.
SuperOp x_at(const ZFamily& zf, double t);

enum class MainFormulaMethod { quadrature, frechet };

struct MainFormulaOptions {
    MainFormulaMethod method = MainFormulaMethod::quadrature;
    int quadrature_nodes = 32;
    bool cross_check = true;
    double consistency_tol = 1e-6;
};

/// Quadrature and Fréchet evaluations of the main formula disagree.
class MainFormulaMismatch : public ConsistencyError {
public:
    MainFormulaMismatch(double t, SuperOp quadrature, SuperOp frechet, const std::string& hint = {});

    double time() const noexcept { return time_; }
    const SuperOp& quadrature_value() const noexcept { return quadrature_; }
    const SuperOp& frechet_value() const noexcept { return frechet_; }

private:
    double time_;
    SuperOp quadrature_;
    SuperOp frechet_;
};

/// ∫₀¹ e^{sZ} X e^{−sZ} ds by n-point Gauss–Legendre in s.
SuperOp main_formula_quadrature(const SuperOp& z, const SuperOp& x, int nodes);

/// D·e^{−Z} where D is the Fréchet derivative of expm at Z along X.
SuperOp main_formula_frechet(const SuperOp& z, const SuperOp& x);

SuperOp local_generator(const ZFamily& zf, double t, const MainFormulaOptions& opts = {});

class GeneratorFamily {
public:
    enum class Provenance { from_main_formula, analytic_model, user_supplied };
    using Eval = std::function<SuperOp(double t, double t0)>;

    static GeneratorFamily from_zfamily(ZFamily zf, MainFormulaOptions opts = {});
    static GeneratorFamily analytic(int dim, double t0, Eval eval);
    static GeneratorFamily user_supplied(int dim, double t0, Eval eval);
    static GeneratorFamily constant(const SuperOp& l, double t0);

    int dim() const noexcept { return dim_; }
    double t0() const noexcept { return t0_; }
    Provenance provenance() const noexcept { return provenance_; }

    SuperOp eval(double t) const { return eval_(t, t0_); }
    SuperOp eval(double t, double t0) const { return eval_(t, t0); }

private:
    GeneratorFamily(int dim, double t0, Eval eval, Provenance p)
        : dim_(dim), t0_(t0), eval_(std::move(eval)), provenance_(p) {}

    int dim_;
    double t0_;
    Eval eval_;
    Provenance provenance_;
};

std::string to_string(GeneratorFamily::Provenance p);

/// Pairwise ‖[X(t), X(u)]‖ over the sample times. Needs at least 3 samples.
Verdict is_commutative(const ZFamily& zf, const std::vector<double>& sample_times, double tol = 1e-12);

/// ∫_{t₀}^t L(τ,t₀) dτ by adaptive Gauss–Kronrod quadrature.
SuperOp integrated_generator(const GeneratorFamily& gf, double t, double atol = 1e-10);

} // namespace tclgen
