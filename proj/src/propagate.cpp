// propagate.cpp: Dynamical maps and Markovianity diagnostics

#include "tclgen/propagate.hpp"

#include <cmath>
#include <sstream>

namespace tclgen {

TimeGrid::TimeGrid(std::vector<double> samples) : samples_(std::move(samples))
{
    if (samples_.size() < 2) throw ValidationError("TimeGrid: need at least two samples");
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        if (!std::isfinite(samples_[k])) throw ValidationError("TimeGrid: non-finite sample");
        if (k > 0 && samples_[k] <= samples_[k - 1]) {
            throw ValidationError("TimeGrid: samples must be strictly increasing");
        }
    }
}

TimeGrid TimeGrid::uniform(double t0, double t_end, int n_samples)
{
    if (n_samples < 2) throw ValidationError("TimeGrid: n_samples must be at least 2");
    if (!(t_end > t0)) throw ValidationError("TimeGrid: t_end must exceed t0");
    std::vector<double> s(static_cast<std::size_t>(n_samples));
    const double step = (t_end - t0) / (n_samples - 1);
    for (int k = 0; k < n_samples; ++k) s[static_cast<std::size_t>(k)] = t0 + k * step;
    s.back() = t_end;
    return TimeGrid(std::move(s));
}

PropagationResult solve_ordered(const GeneratorFamily& gf, const TimeGrid& grid, double rtol, double atol,
                                double cpt_tol)
{
    if (grid.t0() != gf.t0()) {
        throw DomainError("solve_ordered: grid must start at the generator's t0");
    }
    const int d = gf.dim();
    ode::Options opts;
    opts.rtol = rtol;
    opts.atol = atol;
    const ode::Rhs rhs = [&gf](double t, const CMatrix& y) -> CMatrix { return gf.eval(t).matrix() * y; };

    PropagationResult pr{grid, {}, {}, {}};
    const auto states = ode::integrate(rhs, CMatrix::Identity(d * d, d * d), grid.t0(), grid.samples(), opts,
                                       &pr.integrator_stats);
    pr.maps.reserve(states.size());
    pr.cpt_report.reserve(states.size());
    for (const auto& m : states) {
        pr.maps.emplace_back(d, m);
        pr.cpt_report.push_back(is_cpt_map(pr.maps.back(), cpt_tol));
    }
    return pr;
}

SuperOp exp_map(const ZFamily& zf, double t)
{
    return expm(zf.z(t));
}

double composition_defect(const ZFamily& zf, double t, double s)
{
    if (!(zf.t0() <= s && s <= t)) {
        std::ostringstream os;
        os << "composition_defect: need t0 <= s <= t, got t0 = " << zf.t0() << ", s = " << s << ", t = " << t;
        throw DomainError(os.str());
    }
    const SuperOp later = exp_map(zf.with_initial_time(s), t);
    const SuperOp earlier = exp_map(zf, s);
    const SuperOp whole = exp_map(zf, t);
    return distance(later * earlier, whole);
}

MarkovReport markovianity_probe(const ZFamily& zf, const std::vector<std::pair<double, double>>& probe_pairs,
                                double threshold, const MainFormulaOptions& opts)
{
    MarkovReport report;
    report.threshold = threshold;
    report.pairs = probe_pairs;
    for (const auto& [t, s] : probe_pairs) {
        const SuperOp from_t0 = local_generator(zf, t, opts);
        const SuperOp from_s = local_generator(zf.with_initial_time(s), t, opts);
        const double shift = distance(from_s, from_t0);
        const double defect = composition_defect(zf, t, s);
        report.generator_shifts.push_back(shift);
        report.composition_defects.push_back(defect);
        report.max_generator_shift = std::max(report.max_generator_shift, shift);
        report.max_composition_defect = std::max(report.max_composition_defect, defect);
    }
    report.markovian = report.max_generator_shift <= threshold && report.max_composition_defect <= threshold;
    return report;
}

CertificationSummary certify_trajectory(const PropagationResult& pr, double tol)
{
    CertificationSummary out;
    out.verdicts.reserve(pr.maps.size());
    for (const auto& m : pr.maps) {
        out.verdicts.push_back(is_cpt_map(m, tol));
        if (out.verdicts.back().passed) {
            ++out.passed;
        } else {
            ++out.failed;
        }
    }
    return out;
}

} // namespace tclgen
