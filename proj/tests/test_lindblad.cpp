#include "doctest.h"

#include <cmath>
#include <string>

#include "tclgen/errors.hpp"
#include "tclgen/lindblad.hpp"
#include "tclgen/models.hpp"
#include "test_support.hpp"

using namespace tclgen;
using tclgen::testing::matrix_unit;
using tclgen::testing::Rng;

namespace {

const Complex I1(0.0, 1.0);

SuperOp pure_hamiltonian(const CMatrix& h) { return build_generator(LindbladSpec(h, {})); }

} // namespace

TEST_CASE("pure Hamiltonian generator")
{
    const SuperOp l = pure_hamiltonian(0.5 * ops::sigma_z());
    // −i[σ_z/2, E12] = −i E12
    CHECK(max_abs(l.apply(matrix_unit(2, 0, 1)) - (-I1) * matrix_unit(2, 0, 1)) <= 1e-15);
    CHECK(max_abs(l.apply(matrix_unit(2, 0, 0))) <= 1e-15);
    CHECK(is_lindblad_generator(l).passed);
}

TEST_CASE("dephasing and jump generators act as expected")
{
    const SuperOp l0 = models::dephasing_generator();
    CHECK(max_abs(l0.apply(matrix_unit(2, 0, 1)) + 2.0 * matrix_unit(2, 0, 1)) <= 1e-15);
    CHECK(max_abs(l0.apply(matrix_unit(2, 0, 0))) <= 1e-15);

    // σ⁺ = |1⟩⟨2| moves population from level 2 to level 1.
    const SuperOp l1 = models::raising_generator();
    CHECK(max_abs(l1.apply(matrix_unit(2, 1, 1)) - (matrix_unit(2, 0, 0) - matrix_unit(2, 1, 1))) <= 1e-15);
    CHECK(max_abs(l1.apply(matrix_unit(2, 0, 0))) <= 1e-15);

    const SuperOp l2 = models::lowering_generator();
    CHECK(max_abs(l2.apply(matrix_unit(2, 0, 0)) - (matrix_unit(2, 1, 1) - matrix_unit(2, 0, 0))) <= 1e-15);

    for (const auto* g : {&l0, &l1, &l2}) CHECK(is_lindblad_generator(*g).passed);
}

TEST_CASE("negated dephasing fails with a witness of -2")
{
    // P·C(−L0)·P = −|v⟩⟨v| with v = vec(σ_z) orthogonal to |ω⟩, so the witness is −‖v‖² = −2.
    const Verdict v = is_lindblad_generator(-models::dephasing_generator());
    CHECK_FALSE(v.passed);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK_FALSE(v.witness->description.empty());
}

TEST_CASE("non-Lindblad maps are rejected for the right reason")
{
    // Not trace annihilating.
    CHECK_FALSE(is_lindblad_generator(SuperOp::identity(2)).passed);
    // Not Hermiticity preserving: ρ ↦ iρ.
    CHECK_FALSE(is_lindblad_generator(Complex(0.0, 1.0) * SuperOp::identity(2)).passed);
    // Negative rate on a jump generator.
    CHECK_FALSE(is_lindblad_generator(models::raising_generator() - 0.1 * models::lowering_generator()).passed);
}

TEST_CASE("random Lindblad generators pass and the cone is closed")
{
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const SuperOp l = build_generator(rng.spec(d, rng.integer(1, 3)));
        CHECK(is_lindblad_generator(l).passed);
        CHECK(trace_defect(l, 0.0) <= 1e-12);
    }
    const SuperOp l1 = models::raising_generator();
    const SuperOp l2 = models::lowering_generator();
    for (int trial = 0; trial < 100; ++trial) {
        const double a = rng.uniform(0.0, 5.0);
        const double b = rng.uniform(0.0, 5.0);
        CHECK(is_lindblad_generator(a * l1 + b * l2).passed);
    }
}

TEST_CASE("exponentials of Lindblad generators are CPT")
{
    Rng rng(102);
    for (int trial = 0; trial < 10; ++trial) {
        const SuperOp l = build_generator(rng.spec(trial % 2 ? 3 : 2, 2));
        for (int k = 0; k < 20; ++k) {
            const double t = 10.0 * k / 19.0;
            const Verdict v = is_cpt_map(expm(t * l));
            CHECK(v.passed);
        }
    }
}

TEST_CASE("is_cpt_map")
{
    CHECK(is_cpt_map(SuperOp::identity(3)).passed);
    CHECK(is_cpt_map(sandwich_superop(ops::sigma_x(), ops::sigma_x())).passed);

    const Verdict t = is_cpt_map(transpose_map(2));
    CHECK_FALSE(t.passed);
    REQUIRE(t.witness.has_value());
    CHECK(t.witness->value == doctest::Approx(-1.0));
    CHECK(min_choi_eigenvalue(transpose_map(2)) == doctest::Approx(-1.0));

    // Completely positive but trace-increasing.
    CHECK_FALSE(is_cpt_map(2.0 * SuperOp::identity(2)).passed);
}

TEST_CASE("spec validation names the offending term")
{
    try {
        LindbladSpec(ops::sigma_z(), {{1.0, ops::sigma_x()}, {-0.5, ops::sigma_z()}});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
    CMatrix h(2, 2);
    h << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(LindbladSpec(h, {}), ValidationError);
    CHECK_THROWS_AS(LindbladSpec(ops::sigma_z(), {{1.0, CMatrix::Identity(3, 3)}}), DimensionError);
}

TEST_CASE("default basis is trace-orthonormal and traceless")
{
    for (int d : {2, 3, 4}) {
        const auto basis = default_basis(d);
        REQUIRE(static_cast<int>(basis.size()) == d * d - 1);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(std::abs(basis[i].trace()) <= 1e-15);
            CHECK(max_abs(basis[i] - basis[i].adjoint()) <= 1e-15);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Complex ip = (basis[i].adjoint() * basis[j]).trace();
                CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-14);
            }
        }
    }
    const auto q = default_basis(2);
    CHECK(max_abs(q[0] - ops::sigma_x() / std::sqrt(2.0)) <= 1e-15);
    CHECK(max_abs(q[1] - ops::sigma_y() / std::sqrt(2.0)) <= 1e-15);
    CHECK(max_abs(q[2] - ops::sigma_z() / std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("gks decomposition of simple generators")
{
    const auto basis = default_basis(2);

    const GksDecomposition ham = gks_matrix(pure_hamiltonian(0.5 * ops::sigma_z()), basis);
    CHECK(max_abs(ham.kossakowski) <= 1e-14);
    CHECK(max_abs(ham.hamiltonian - 0.5 * ops::sigma_z()) <= 1e-14);

    // Dephasing with unit rate on σ_z is rate 2 on σ_z/√2.
    const GksDecomposition deph = gks_matrix(models::dephasing_generator(), basis);
    CMatrix k = CMatrix::Zero(3, 3);
    k(2, 2) = 2.0;
    CHECK(max_abs(deph.kossakowski - k) <= 1e-14);
    CHECK(max_abs(deph.hamiltonian) <= 1e-14);
    CHECK(deph.ccp);

    const GksDecomposition neg = gks_matrix(-models::dephasing_generator(), basis);
    CHECK_FALSE(neg.ccp);
    CHECK(neg.min_eigenvalue == doctest::Approx(-2.0));
    CHECK_THROWS_AS(neg.to_spec(), ValidationError);
}

TEST_CASE("gks round trip reconstructs the generator")
{
    Rng rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const SuperOp l = build_generator(rng.spec(d, rng.integer(1, 3)));
        const GksDecomposition g = gks_matrix(l, default_basis(d));
        CHECK(g.ccp);
        CHECK(std::abs(g.hamiltonian.trace()) <= 1e-12);
        CHECK(max_abs(g.kossakowski - g.kossakowski.adjoint()) <= 1e-12);
        CHECK(distance(build_generator(g.to_spec()), l) <= 1e-10);
    }
}
