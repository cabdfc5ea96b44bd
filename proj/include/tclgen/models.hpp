// models.hpp: Exactly solvable models used as oracles for the generic machinery
//
//  * Pure decoherence: ρ ↦ Σ c_mn(t) P_m ρ P_n with a PSD coherence matrix.
//  * Two-rate qubit model: X(t) = a₁(t) L₁ + a₂(t) L₂ with L₁, L₂ the
//    raising/lowering dissipators, [L₁, L₂] = L₁ − L₂.
//  * σ_z limit: Λ(t) = exp(−log(cos t) L₀) as t → π/2.

#pragma once

#include <string>
#include <vector>

#include "tclgen/generator.hpp"
#include "tclgen/lindblad.hpp"
#include "tclgen/propagate.hpp"
#include "tclgen/scalar_fn.hpp"

namespace tclgen::models {

/// L₀ρ = σ_z ρ σ_z − ρ.
SuperOp dephasing_generator();
/// L₁ρ = σ⁺ρσ⁻ − ½{σ⁻σ⁺, ρ}.
SuperOp raising_generator();
/// L₂ρ = σ⁻ρσ⁺ − ½{σ⁺σ⁻, ρ}.
SuperOp lowering_generator();

// ---------------------------------------------------------------------------
// Pure decoherence

class PureDecoherenceModel {
public:
    /// Qubit with c₁₂ = γ and c₂₁ = γ̄.
    static PureDecoherenceModel qubit(ScalarFn gamma, double t0 = 0.0);

    /// Full n×n coefficient matrix. Diagonal entries must be the constant 1
    /// and coeffs[m][n] must be the conjugate of coeffs[n][m].
    static PureDecoherenceModel general(std::vector<std::vector<ScalarFn>> coeffs, double t0 = 0.0);

    int dim() const noexcept { return static_cast<int>(coeffs_.size()); }
    double t0() const noexcept { return t0_; }
    const ScalarFn& coefficient(int m, int n) const;

    /// [c_mn(t,t₀)], evaluated at elapsed time t − t₀.
    CMatrix coefficient_matrix(double t) const;
    CMatrix coefficient_derivative(double t) const;

private:
    PureDecoherenceModel() = default;

    std::vector<std::vector<ScalarFn>> coeffs_;
    double t0_ = 0.0;
};

/// Throws ValidationError naming the eigenvalue when [c_mn(t)] is not PSD.
SuperOp pure_decoherence_map(const PureDecoherenceModel& m, double t);

/// Σ α_mn P_m·P_n with α_mn = ċ_mn / c_mn. Throws SingularityError when some
/// |c_mn(t)| ≤ 1e−14.
SuperOp pure_decoherence_generator(const PureDecoherenceModel& m, double t);

struct QubitDephasingCoefficients {
    double b1;  // Im(γ̇ / 2γ)
    double b2;  // Re(γ̇ / 2γ)
};

QubitDephasingCoefficients qubit_dephasing_coefficients(const PureDecoherenceModel& m, double t);

/// ρ ↦ i·b₁[σ_z, ρ] − b₂(σ_z ρ σ_z − ρ).
SuperOp qubit_dephasing_generator(double b1, double b2);

GeneratorFamily pure_decoherence_family(const PureDecoherenceModel& m);

// ---------------------------------------------------------------------------
// Two-rate qubit model (homogeneous, t₀ = 0)

struct TwoRateModel {
    ScalarFn a1;
    ScalarFn a2;

    TwoRateModel(ScalarFn rate1, ScalarFn rate2);

    double A1(double t) const;
    double A2(double t) const;
    double A(double t) const;
    /// W = A₁a₂ − A₂a₁.
    double wronskian(double t) const;
};

/// f = (W/A)(1 + (e^{−A} − 1)/A), with a series for |A| < 1e−4.
double two_rate_f(const TwoRateModel& m, double t);

/// ∫₀^t f by adaptive quadrature.
double two_rate_F(const TwoRateModel& m, double t, double atol = 1e-10);

struct TwoRateGenerator {
    double b1;
    double b2;
    SuperOp op;
};

TwoRateGenerator two_rate_generator(const TwoRateModel& m, double t);

struct Disentangling {
    double nu1;
    double nu2;
    SuperOp lhs;  // expm(Z(t))
    SuperOp rhs;  // expm(ln ν₁ L₁) · expm(ln ν₂ L₂)
    double defect;
};

Disentangling two_rate_disentangle(const TwoRateModel& m, double t);

struct TwoRateIntegrated {
    double B1;
    double B2;
    Verdict lindblad_verdict;  // of B₁L₁ + B₂L₂
};

TwoRateIntegrated two_rate_B(const TwoRateModel& m, double t, double tol = tol::kCpt);

/// Z(t) = A₁L₁ + A₂L₂ as a homogeneous LinearZ family.
ZFamily two_rate_zfamily(const TwoRateModel& m);

/// The analytic generator b₁L₁ + b₂L₂; evaluable only at t₀ = 0.
GeneratorFamily two_rate_generator_family(const TwoRateModel& m);

struct BScanEntry {
    std::string schedule1;
    std::string schedule2;
    double min_B;     // min over t of min(B₁, B₂)
    double at_time;
    double min_A;     // min over t of min(A₁, A₂)
};

struct BScanReport {
    std::vector<BScanEntry> entries;
    double global_min_B = 0.0;
    std::size_t negative_count = 0;  // entries with min_B < −tol among those with min_A ≥ 0
};

/// Enumerates piecewise-constant schedules taking every combination of
/// `values` on the pieces delimited by `breakpoints`, for both rates, and
/// records min(B₁, B₂) over `times`.
BScanReport two_rate_B_scan(const std::vector<double>& breakpoints, const std::vector<double>& values,
                            const std::vector<double>& times, double tol = tol::kCpt);

// ---------------------------------------------------------------------------
// σ_z limit

struct SigmaZLimitRow {
    double t;
    double offdiag_factor;      // Re of the (1,2) entry of Λ(t)E₁₂
    double dist_sigma_z_map;    // to ρ ↦ σ_zρσ_z
    double dist_diag_projection;  // to ρ ↦ ½(ρ + σ_zρσ_z)
    Verdict cpt;
};

struct SigmaZLimitReport {
    std::vector<SigmaZLimitRow> rows;
    bool all_cpt = true;
    bool projection_distance_monotone = true;
    /// The computed limit differs from the map ρ ↦ σ_zρσ_z.
    bool sigma_z_discrepancy = false;
    std::string note;
};

/// Throws DomainError for t outside [0, π/2).
SigmaZLimitReport sigma_z_limit_study(const std::vector<double>& t_values, double tol = tol::kCpt);

} // namespace tclgen::models
