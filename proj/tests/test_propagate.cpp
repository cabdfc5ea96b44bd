#include "doctest.h"

#include <cmath>

#include "tclgen/errors.hpp"
#include "tclgen/generator.hpp"
#include "tclgen/models.hpp"
#include "tclgen/propagate.hpp"
#include "test_support.hpp"

using namespace tclgen;
using tclgen::testing::matrix_unit;

namespace {

const SuperOp kL0 = models::dephasing_generator();
const SuperOp kL1 = models::raising_generator();
const SuperOp kL2 = models::lowering_generator();

ZFamily two_rate_family()
{
    return ZFamily::linear({{kL1, ScalarFn::constant(1.0)}, {kL2, ScalarFn::polynomial({0.0, 1.0})}}, 0.0);
}

} // namespace

TEST_CASE("TimeGrid validation")
{
    CHECK(TimeGrid::uniform(0.0, 1.0, 11).samples()[10] == 1.0);
    CHECK_THROWS_AS(TimeGrid({0.0}), ValidationError);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(TimeGrid::uniform(1.0, 1.0, 5), ValidationError);
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 1.0, 1), ValidationError);
}

TEST_CASE("zero generator propagates to the identity")
{
    const auto pr = solve_ordered(GeneratorFamily::constant(SuperOp::zero(2), 0.0), TimeGrid::uniform(0.0, 3.0, 7));
    for (const auto& m : pr.maps) CHECK(distance(m, SuperOp::identity(2)) <= 1e-15);
}

TEST_CASE("constant generator matches the exponential")
{
    const auto pr = solve_ordered(GeneratorFamily::constant(kL0, 0.0), TimeGrid::uniform(0.0, 5.0, 21));
    for (std::size_t k = 0; k < pr.grid.size(); ++k) {
        const double t = pr.grid.samples()[k];
        CHECK(distance(pr.maps[k], expm(t * kL0)) <= 1e-9);
        // Coherences decay as e^{−2t}.
        CHECK(std::abs(pr.maps[k].apply(matrix_unit(2, 0, 1))(0, 1).real() - std::exp(-2.0 * t)) <= 1e-9);
    }
    CHECK(distance(pr.maps[0], SuperOp::identity(2)) <= 1e-13);
    CHECK(pr.cpt_report.size() == pr.grid.size());
}

TEST_CASE("two-rate propagation reproduces the exponential form")
{
    const ZFamily zf = two_rate_family();
    const TimeGrid grid = TimeGrid::uniform(0.0, 3.0, 13);
    const auto analytic = solve_ordered(models::two_rate_generator_family(
                                            models::TwoRateModel(ScalarFn::constant(1.0), ScalarFn::polynomial({0.0, 1.0}))),
                                        grid);
    const auto from_main = solve_ordered(GeneratorFamily::from_zfamily(zf), grid, 1e-8, 1e-10);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const SuperOp target = exp_map(zf, grid.samples()[k]);
        CHECK(distance(analytic.maps[k], target) <= 1e-6);
        CHECK(distance(from_main.maps[k], target) <= 1e-6);
        CHECK(trace_defect(from_main.maps[k], 1.0) <= 1e-9);
        CHECK(analytic.cpt_report[k].passed);
    }
}

TEST_CASE("tightening the tolerance reduces the error")
{
    const ZFamily zf = two_rate_family();
    const GeneratorFamily gf = GeneratorFamily::from_zfamily(zf);
    const TimeGrid grid = TimeGrid::uniform(0.0, 2.0, 5);
    auto err = [&](double rtol) {
        const auto pr = solve_ordered(gf, grid, rtol, rtol * 1e-2);
        double e = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            e = std::max(e, distance(pr.maps[k], exp_map(zf, grid.samples()[k])));
        }
        return e;
    };
    const double e4 = err(1e-4);
    const double e6 = err(1e-6);
    const double e8 = err(1e-8);
    CHECK(e6 < e4);
    CHECK(e8 < e6);
    CHECK(e8 <= std::max(10 * 1e-8, 1e-6));
}

TEST_CASE("solve_ordered domain checks")
{
    CHECK_THROWS_AS(solve_ordered(GeneratorFamily::constant(kL0, 1.0), TimeGrid::uniform(0.0, 2.0, 3)), DomainError);
}

TEST_CASE("exp_map closed forms")
{
    const ZFamily c = ZFamily::linear({{kL0, ScalarFn::constant(1.0)}}, 0.0);
    CHECK(distance(exp_map(c, 0.0), SuperOp::identity(2)) == 0.0);
    CHECK(std::abs(exp_map(c, 1.0).apply(matrix_unit(2, 0, 1))(0, 1).real() - std::exp(-2.0)) <= 1e-15);

    const ZFamily zf = two_rate_family();
    for (double t : {0.5, 1.0, 2.0, 3.0}) CHECK(is_cpt_map(exp_map(zf, t)).passed);
}

TEST_CASE("composition defect")
{
    const ZFamily c = ZFamily::linear({{kL0, ScalarFn::constant(1.0)}}, 0.0);
    CHECK(composition_defect(c, 2.0, 1.0) <= 1e-11);

    // a(u) = u on L0: Λ(t,s) damps coherences by e^{−(t−s)²}, so at (2, 1) the
    // defect is |e^{−1}e^{−1} − e^{−4}|.
    const ZFamily ramp = ZFamily::linear({{kL0, ScalarFn::polynomial({0.0, 1.0})}}, 0.0);
    CHECK(composition_defect(ramp, 2.0, 1.0) == doctest::Approx(std::exp(-2.0) - std::exp(-4.0)).epsilon(1e-12));

    const ZFamily zf = two_rate_family();
    CHECK(composition_defect(zf, 2.0, 0.0) <= 1e-13);
    CHECK(composition_defect(zf, 2.0, 2.0) <= 1e-13);
    // Frozen regression value.
    CHECK(composition_defect(zf, 2.0, 1.0) == doctest::Approx(0.17410453667825432).epsilon(1e-10));
    CHECK_THROWS_AS(composition_defect(zf, 1.0, 2.0), DomainError);
}

TEST_CASE("markovianity probe")
{
    const std::vector<std::pair<double, double>> pairs{{2.0, 1.0}, {3.0, 1.5}};
    const ZFamily c = ZFamily::linear({{kL0, ScalarFn::constant(1.0)}}, 0.0);
    const MarkovReport m = markovianity_probe(c, pairs);
    CHECK(m.markovian);
    CHECK(m.classification() == "markovian");
    CHECK(m.max_composition_defect <= 1e-11);

    const ZFamily zero = ZFamily::linear({{kL0, ScalarFn::constant(0.0)}}, 0.0);
    CHECK(markovianity_probe(zero, pairs).markovian);

    const MarkovReport nm = markovianity_probe(two_rate_family(), pairs);
    CHECK_FALSE(nm.markovian);
    CHECK(nm.classification() == "non_markovian");
    CHECK(nm.composition_defects.size() == 2);
    CHECK(nm.max_composition_defect > 1e-4);
    CHECK(nm.max_generator_shift > 1e-4);
}

TEST_CASE("certification of trajectories")
{
    const auto good = solve_ordered(GeneratorFamily::constant(kL0, 0.0), TimeGrid::uniform(0.0, 2.0, 9));
    const auto s = certify_trajectory(good);
    CHECK(s.failed == 0);
    CHECK(s.passed == 9);

    const auto bad = solve_ordered(GeneratorFamily::constant(-1.0 * kL0, 0.0), TimeGrid::uniform(0.0, 2.0, 9));
    const auto r = certify_trajectory(bad);
    CHECK(r.verdicts[0].passed);
    CHECK(r.failed == 8);
    REQUIRE(r.verdicts[4].witness.has_value());
    CHECK(r.verdicts[4].witness->value < 0.0);
}
