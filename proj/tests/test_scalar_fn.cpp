#include "doctest.h"

#include <cmath>

#include "tclgen/errors.hpp"
#include "tclgen/quadrature.hpp"
#include "tclgen/scalar_fn.hpp"

using namespace tclgen;
using cd = std::complex<double>;

namespace {

std::vector<ScalarFn> presets()
{
    return {
        ScalarFn::constant(2.5),
        ScalarFn::constant(cd(0.5, -1.0)),
        ScalarFn::polynomial({1.0, -0.5, 0.25, 0.125}),
        ScalarFn::exp_decay(1.0, 0.5, 0.0),
        ScalarFn::exp_decay(cd(0.3, 0.7), 0.25, 1.5),
        ScalarFn::exp_decay(2.0, 1e-10, 0.0),
    };
}

} // namespace

TEST_CASE("preset values")
{
    CHECK(ScalarFn::constant(3.0)(7.0) == cd(3.0));
    CHECK(ScalarFn::polynomial({1.0, 2.0, 3.0})(2.0) == cd(17.0));
    const auto e = ScalarFn::exp_decay(2.0, 0.5, 1.0)(2.0);
    CHECK(std::abs(e - 2.0 * std::exp(cd(-1.0, -2.0))) <= 1e-15);

    const auto pw = ScalarFn::piecewise_constant({1.0, 2.0}, {-1.0, 0.0, 3.0});
    CHECK(pw(0.5) == cd(-1.0));
    CHECK(pw(1.0) == cd(0.0));  // right-continuous at breakpoints
    CHECK(pw(5.0) == cd(3.0));
    CHECK(pw.integral(2.5).real() == doctest::Approx(-1.0 + 0.0 + 1.5));
    CHECK(pw.integral(0.5).real() == doctest::Approx(-0.5));
}

TEST_CASE("derivatives match central differences")
{
    for (const auto& f : presets()) {
        for (double tau : {0.3, 1.0, 2.7}) {
            const double h = 1e-5;
            const cd fd = (f(tau + h) - f(tau - h)) / (2.0 * h);
            CHECK(std::abs(f.derivative(tau) - fd) <= 1e-8 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("integrals match adaptive quadrature")
{
    for (const auto& f : presets()) {
        for (double tau : {0.0, 0.4, 1.0, 3.5}) {
            const auto q = quad::integrate([&](double u) { return f(u); }, 0.0, tau, 1e-14);
            CHECK(std::abs(f.integral(tau) - q.value) <= 1e-12 * std::max(1.0, std::abs(q.value)));
        }
    }
    // Tiny decay rate falls back to the series without cancellation.
    const auto slow = ScalarFn::exp_decay(1.0, 1e-12, 0.0);
    CHECK(slow.integral(1.0).real() == doctest::Approx(1.0 - 0.5e-12).epsilon(1e-15));
}

TEST_CASE("reality checks")
{
    CHECK(ScalarFn::exp_decay(1.0, 0.5, 0.0).is_real());
    CHECK_FALSE(ScalarFn::exp_decay(1.0, 0.5, 2.0).is_real());
    CHECK_FALSE(ScalarFn::constant(cd(0.0, 1.0)).is_real());
    CHECK_THROWS_AS(ScalarFn::constant(cd(0.0, 1.0)).real_at(1.0), ValidationError);
    CHECK(ScalarFn::polynomial({0.0, 1.0}).real_integral(2.0) == doctest::Approx(2.0));
}

TEST_CASE("invalid presets and arguments")
{
    CHECK_THROWS_AS(ScalarFn::polynomial({}), ValidationError);
    CHECK_THROWS_AS(ScalarFn::piecewise_constant({1.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS(ScalarFn::piecewise_constant({2.0, 1.0}, {1.0, 2.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(ScalarFn::piecewise_constant({0.0}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(ScalarFn::constant(std::nan("")), ValidationError);
    CHECK_THROWS_AS(ScalarFn::constant(1.0)(-0.5), DomainError);
}
