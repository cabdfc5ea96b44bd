// dopri5.cpp: Dormand–Prince 5(4) with Hairer's continuous extension

#include "tclgen/dopri5.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tclgen/errors.hpp"

namespace tclgen::ode {

namespace {

constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

// Difference between the 5th- and embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double weighted_rms(const CMatrix& v, const CMatrix& y_old, const CMatrix& y_new, const Options& o)
{
    double acc = 0.0;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            const double sc = o.atol + o.rtol * std::max(std::abs(y_old(i, j)), std::abs(y_new(i, j)));
            const double r = std::abs(v(i, j)) / sc;
            acc += r * r;
        }
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

double initial_step(const Rhs& f, double t0, const CMatrix& y0, const CMatrix& f0, double span,
                    const Options& o, Stats& st)
{
    const double dn0 = weighted_rms(y0, y0, y0, o);
    const double dn1 = weighted_rms(f0, y0, y0, o);
    double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
    h0 = std::min(h0, span);
    const CMatrix y1 = y0 + h0 * f0;
    const CMatrix f1 = f(t0 + h0, y1);
    ++st.rhs_evaluations;
    const double dn2 = weighted_rms(f1 - f0, y0, y0, o) / h0;
    const double big = std::max(dn1, dn2);
    const double h1 = big <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / big, 0.2);
    return std::min({100.0 * h0, h1, span});
}

} // namespace

std::vector<CMatrix> integrate(const Rhs& f, const CMatrix& y0, double t0,
                               const std::vector<double>& samples, const Options& opts, Stats* stats)
{
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) {
        throw ValidationError("dopri5: rtol and atol must be positive");
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k] < t0 || (k > 0 && samples[k] < samples[k - 1])) {
            throw ValidationError("dopri5: sample times must be non-decreasing and >= t0");
        }
    }

    Stats local;
    Stats& st = stats ? *stats : local;
    st = Stats{};

    std::vector<CMatrix> out;
    out.reserve(samples.size());
    std::size_t next = 0;
    while (next < samples.size() && samples[next] == t0) {
        out.push_back(y0);
        ++next;
    }
    if (next == samples.size()) return out;

    const double t_end = samples.back();
    const double span = t_end - t0;
    double t = t0;
    CMatrix y = y0;
    CMatrix k1 = f(t, y);
    ++st.rhs_evaluations;

    double h = opts.initial_step > 0.0 ? opts.initial_step : initial_step(f, t0, y0, k1, span, opts, st);
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
    bool last_rejected = false;

    while (next < samples.size()) {
        if (st.steps + st.rejected_steps >= opts.max_steps) {
            std::ostringstream os;
            os << "dopri5: step budget exhausted at t = " << t;
            throw StiffnessError(t, os.str());
        }
        const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (h < h_min) {
            std::ostringstream os;
            os.precision(17);
            os << "dopri5: step size underflow at t = " << t << " (h = " << h << ")";
            throw StiffnessError(t, os.str());
        }
        if (t + h > t_end || t_end - (t + h) < h_min) h = t_end - t;

        const CMatrix k2 = f(t + c2 * h, y + h * (a21 * k1));
        const CMatrix k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const CMatrix k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const CMatrix k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const CMatrix k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const CMatrix y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const CMatrix k7 = f(t + h, y_new);
        st.rhs_evaluations += 6;

        const CMatrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = weighted_rms(err, y, y_new, opts);
        if (!std::isfinite(en)) {
            throw NumericalError("dopri5: non-finite error estimate at t = " + std::to_string(t));
        }

        if (en <= 1.0) {
            const double t_new = (h == t_end - t) ? t_end : t + h;
            // Continuous extension on [t, t_new].
            const CMatrix ydiff = y_new - y;
            const CMatrix bspl = h * k1 - ydiff;
            const CMatrix r4 = ydiff - h * k7 - bspl;
            const CMatrix r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            while (next < samples.size() && samples[next] <= t_new) {
                if (samples[next] == t_new) {
                    out.push_back(y_new);
                } else {
                    const double th = (samples[next] - t) / h;
                    const double th1 = 1.0 - th;
                    out.push_back(y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5))));
                }
                ++next;
            }
            ++st.steps;
            st.est_error += max_abs(err);
            t = t_new;
            y = y_new;
            k1 = k7;
            double fac = en == 0.0 ? 10.0 : 0.9 * std::pow(en, -0.2);
            fac = std::clamp(fac, 0.2, 10.0);
            if (last_rejected) fac = std::min(fac, 1.0);
            h *= fac;
            if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
            last_rejected = false;
        } else {
            ++st.rejected_steps;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
        }
    }
    return out;
}

} // namespace tclgen::ode
