// scalar_fn.cpp: Preset scalar schedules

#include "tclgen/scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tclgen/errors.hpp"

namespace tclgen {

namespace {

void require_finite_value(double v, const char* what)
{
    if (!std::isfinite(v)) throw ValidationError(std::string("ScalarFn: non-finite ") + what);
}

void require_tau(double tau)
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("ScalarFn: argument must be finite and >= 0, got " + std::to_string(tau));
    }
}

} // namespace

ScalarFn ScalarFn::constant(std::complex<double> value)
{
    require_finite_value(value.real(), "constant");
    require_finite_value(value.imag(), "constant");
    ScalarFn f;
    f.kind_ = Kind::constant;
    f.scale_ = value;
    return f;
}

ScalarFn ScalarFn::polynomial(std::vector<double> coefficients)
{
    if (coefficients.empty()) throw ValidationError("ScalarFn: polynomial needs coefficients");
    for (double c : coefficients) require_finite_value(c, "polynomial coefficient");
    ScalarFn f;
    f.kind_ = Kind::polynomial;
    f.coeffs_ = std::move(coefficients);
    return f;
}

ScalarFn ScalarFn::exp_decay(std::complex<double> c, double lambda, double omega)
{
    require_finite_value(c.real(), "exp_decay scale");
    require_finite_value(c.imag(), "exp_decay scale");
    require_finite_value(lambda, "exp_decay lambda");
    require_finite_value(omega, "exp_decay omega");
    ScalarFn f;
    f.kind_ = Kind::exp_decay;
    f.scale_ = c;
    f.lambda_ = lambda;
    f.omega_ = omega;
    return f;
}

ScalarFn ScalarFn::piecewise_constant(std::vector<double> breakpoints, std::vector<double> values)
{
    if (values.size() != breakpoints.size() + 1) {
        throw ValidationError("ScalarFn: piecewise_constant needs one more value than breakpoints");
    }
    for (double v : values) require_finite_value(v, "piecewise value");
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        require_finite_value(breakpoints[k], "breakpoint");
        if (breakpoints[k] <= 0.0) {
            throw ValidationError("ScalarFn: piecewise breakpoints must be positive");
        }
        if (k > 0 && breakpoints[k] <= breakpoints[k - 1]) {
            throw ValidationError("ScalarFn: piecewise breakpoints must be strictly increasing");
        }
    }
    ScalarFn f;
    f.kind_ = Kind::piecewise_constant;
    f.breaks_ = std::move(breakpoints);
    f.coeffs_ = std::move(values);
    return f;
}

std::complex<double> ScalarFn::operator()(double tau) const
{
    require_tau(tau);
    switch (kind_) {
    case Kind::constant:
        return scale_;
    case Kind::polynomial: {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * tau + *it;
        return acc;
    }
    case Kind::exp_decay:
        return scale_ * std::exp(std::complex<double>(-lambda_ * tau, -omega_ * tau));
    case Kind::piecewise_constant: {
        const auto idx = std::upper_bound(breaks_.begin(), breaks_.end(), tau) - breaks_.begin();
        return coeffs_[static_cast<std::size_t>(idx)];
    }
    }
    return 0.0;
}

std::complex<double> ScalarFn::derivative(double tau) const
{
    require_tau(tau);
    switch (kind_) {
    case Kind::constant:
        return 0.0;
    case Kind::polynomial: {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * tau + static_cast<double>(k) * coeffs_[k];
        return acc;
    }
    case Kind::exp_decay:
        return std::complex<double>(-lambda_, -omega_) * (*this)(tau);
    case Kind::piecewise_constant:
        // Zero away from the breakpoints; the jumps carry no classical derivative.
        return 0.0;
    }
    return 0.0;
}

std::complex<double> ScalarFn::integral(double tau) const
{
    require_tau(tau);
    switch (kind_) {
    case Kind::constant:
        return scale_ * tau;
    case Kind::polynomial: {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * tau + coeffs_[k] / static_cast<double>(k + 1);
        return acc * tau;
    }
    case Kind::exp_decay: {
        const std::complex<double> rate(lambda_, omega_);
        const std::complex<double> x = rate * tau;
        // (1 − e^{−x})/rate, with expm1 for small |x|.
        if (std::abs(x) < 1e-8) return scale_ * tau * (1.0 - 0.5 * x + x * x / 6.0);
        std::complex<double> one_minus_exp;
        if (omega_ == 0.0) {
            one_minus_exp = -std::expm1(-lambda_ * tau);
        } else {
            one_minus_exp = 1.0 - std::exp(-x);
        }
        return scale_ * one_minus_exp / rate;
    }
    case Kind::piecewise_constant: {
        double acc = 0.0;
        double left = 0.0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const double right = k < breaks_.size() ? breaks_[k] : tau;
            if (tau <= right) return acc + coeffs_[k] * (tau - left);
            acc += coeffs_[k] * (right - left);
            left = right;
        }
        return acc;
    }
    }
    return 0.0;
}

bool ScalarFn::is_real() const
{
    switch (kind_) {
    case Kind::constant:
        return scale_.imag() == 0.0;
    case Kind::exp_decay:
        return scale_.imag() == 0.0 && omega_ == 0.0;
    case Kind::polynomial:
    case Kind::piecewise_constant:
        return true;
    }
    return true;
}

double ScalarFn::real_at(double tau) const
{
    const auto v = (*this)(tau);
    if (std::abs(v.imag()) > 1e-14 * std::max(1.0, std::abs(v.real()))) {
        throw ValidationError("ScalarFn: expected a real value, got complex (" + describe() + ")");
    }
    return v.real();
}

double ScalarFn::real_integral(double tau) const
{
    const auto v = integral(tau);
    if (std::abs(v.imag()) > 1e-14 * std::max(1.0, std::abs(v.real()))) {
        throw ValidationError("ScalarFn: expected a real integral, got complex (" + describe() + ")");
    }
    return v.real();
}

std::string ScalarFn::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::constant:
        os << "constant(" << scale_.real();
        if (scale_.imag() != 0.0) os << (scale_.imag() < 0 ? "" : "+") << scale_.imag() << "i";
        os << ")";
        break;
    case Kind::polynomial:
        os << "polynomial(";
        for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? "," : "") << coeffs_[k];
        os << ")";
        break;
    case Kind::exp_decay:
        os << "exp_decay(c=" << scale_.real() << (scale_.imag() < 0 ? "" : "+") << scale_.imag()
           << "i,lambda=" << lambda_ << ",omega=" << omega_ << ")";
        break;
    case Kind::piecewise_constant:
        os << "piecewise_constant(";
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            os << (k ? "," : "") << coeffs_[k];
            if (k < breaks_.size()) os << "|" << breaks_[k];
        }
        os << ")";
        break;
    }
    return os.str();
}

} // namespace tclgen
