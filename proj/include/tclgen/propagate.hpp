// propagate.hpp: Dynamical maps Λ(t,t₀): time-ordered integration, closed-form
// exp(Z), and composition-law / Markovianity diagnostics

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tclgen/dopri5.hpp"
#include "tclgen/generator.hpp"

namespace tclgen {

class TimeGrid {
public:
    /// Throws ValidationError unless samples are finite, strictly increasing,
    /// and contain at least two points.
    explicit TimeGrid(std::vector<double> samples);

    static TimeGrid uniform(double t0, double t_end, int n_samples);

    double t0() const noexcept { return samples_.front(); }
    double t_end() const noexcept { return samples_.back(); }
    const std::vector<double>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    std::vector<double> samples_;
};

struct PropagationResult {
    TimeGrid grid;
    std::vector<SuperOp> maps;
    ode::Stats integrator_stats;
    std::vector<Verdict> cpt_report;
};

/// Integrates dΛ/dt = L(t,t₀)Λ, Λ(t₀) = 1, with adaptive Dormand–Prince 5(4)
/// over the full superoperator. The grid must start at gf.t0().
PropagationResult solve_ordered(const GeneratorFamily& gf, const TimeGrid& grid, double rtol = 1e-10,
                                double atol = 1e-12, double cpt_tol = tol::kCpt);

/// Λ(t,t₀) = expm(Z(t,t₀)).
SuperOp exp_map(const ZFamily& zf, double t);

/// max |Λ(t,s)Λ(s,t₀) − Λ(t,t₀)| with all three maps from exp_map.
double composition_defect(const ZFamily& zf, double t, double s);

struct MarkovReport {
    double max_generator_shift = 0.0;  // max ‖L(t, s) − L(t, t₀)‖ over probe pairs
    double max_composition_defect = 0.0;
    double threshold = 1e-8;
    bool markovian = true;
    std::vector<std::pair<double, double>> pairs;
    std::vector<double> generator_shifts;
    std::vector<double> composition_defects;

    std::string classification() const { return markovian ? "markovian" : "non_markovian"; }
};

/// Probe pairs are (t, s) with t ≥ s ≥ t₀.
MarkovReport markovianity_probe(const ZFamily& zf, const std::vector<std::pair<double, double>>& probe_pairs,
                                double threshold = 1e-8, const MainFormulaOptions& opts = {});

struct CertificationSummary {
    std::vector<Verdict> verdicts;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

CertificationSummary certify_trajectory(const PropagationResult& pr, double tol = tol::kCpt);

} // namespace tclgen
