// scalar_fn.hpp: Preset scalar schedules of elapsed time τ ≥ 0
//
// Rates, coefficients, and coherence functions are chosen from a closed set of
// presets so that values, derivatives, and primitives all have closed forms.

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tclgen {

class ScalarFn {
public:
    enum class Kind { constant, polynomial, exp_decay, piecewise_constant };

    static ScalarFn constant(std::complex<double> value);
    /// Σ c_k τ^k, coefficients in ascending order.
    static ScalarFn polynomial(std::vector<double> coefficients);
    /// c·e^{−λτ}·e^{−iωτ}.
    static ScalarFn exp_decay(std::complex<double> c, double lambda, double omega);
    /// values[k] on [breakpoints[k−1], breakpoints[k]); values.size() must be
    /// breakpoints.size() + 1 and breakpoints strictly increasing.
    static ScalarFn piecewise_constant(std::vector<double> breakpoints, std::vector<double> values);

    Kind kind() const noexcept { return kind_; }

    std::complex<double> operator()(double tau) const;
    std::complex<double> derivative(double tau) const;
    /// ∫₀^τ of the function.
    std::complex<double> integral(double tau) const;

    /// Real part, after checking the value is real to 1e−14 relative.
    double real_at(double tau) const;
    double real_integral(double tau) const;

    /// True when the function is real for every τ.
    bool is_real() const;

    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    std::complex<double> scale() const noexcept { return scale_; }
    double lambda() const noexcept { return lambda_; }
    double omega() const noexcept { return omega_; }

    std::string describe() const;

private:
    ScalarFn() = default;

    Kind kind_ = Kind::constant;
    std::complex<double> scale_{0.0, 0.0};
    double lambda_ = 0.0;
    double omega_ = 0.0;
    std::vector<double> coeffs_;  // polynomial coefficients or piecewise values
    std::vector<double> breaks_;
};

} // namespace tclgen
