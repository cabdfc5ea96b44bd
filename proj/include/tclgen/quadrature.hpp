// quadrature.hpp: Gauss–Legendre rules and adaptive Gauss–Kronrod integration
//
// The adaptive integrator is templated on the integrand's value type so the
// same routine handles real, complex, and matrix-valued functions.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "tclgen/errors.hpp"

namespace tclgen::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss–Legendre rule mapped to [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
auto kronrod15(const F& f, double a, double b)
{
    using T = std::decay_t<decltype(f(a))>;
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T fc = f(center);
    T kronrod = kWgk[7] * fc;
    T gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + kWgk[j] * pair;
        if (j % 2 == 1) gauss = gauss + kWg[j / 2] * pair;
    }
    kronrod = half * kronrod;
    gauss = half * gauss;
    const double err = magnitude(kronrod - gauss);
    return Segment<T>{a, b, kronrod, err};
}

} // namespace detail

template <typename T>
struct Result {
    T value;
    double error_estimate;
    int evaluations;
};

/// Globally adaptive G7–K15 integration of f over [a, b]. Converges when the
/// summed error estimate is below max(atol, rtol·|value|); throws
/// NumericalError when max_segments is exhausted first.
template <typename F>
auto integrate(const F& f, double a, double b, double atol, double rtol = 0.0,
               int max_segments = 2000)
{
    using T = std::decay_t<decltype(f(a))>;
    if (a == b) {
        const T zero = 0.0 * f(a);
        return Result<T>{zero, 0.0, 1};
    }
    if (b < a) {
        auto r = integrate(f, b, a, atol, rtol, max_segments);
        r.value = -1.0 * r.value;
        return r;
    }

    std::priority_queue<detail::Segment<T>> heap;
    auto first = detail::kronrod15(f, a, b);
    T total = first.value;
    double total_err = first.error;
    heap.push(std::move(first));
    int evaluations = 15;

    while (total_err > std::max(atol, rtol * detail::magnitude(total))) {
        if (static_cast<int>(heap.size()) >= max_segments) {
            throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(a)
                                 + ", " + std::to_string(b) + "], error estimate "
                                 + std::to_string(total_err));
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::kronrod15(f, worst.a, mid);
        auto right = detail::kronrod15(f, mid, worst.b);
        evaluations += 30;
        total = total - worst.value + left.value + right.value;
        total_err += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
    }

    // Re-sum to shed the drift of incremental updates.
    T sum = 0.0 * total;
    double err = 0.0;
    while (!heap.empty()) {
        sum = sum + heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return Result<T>{sum, err, evaluations};
}

} // namespace tclgen::quad
