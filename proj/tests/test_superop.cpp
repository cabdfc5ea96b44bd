#include "doctest.h"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "tclgen/errors.hpp"
#include "tclgen/lindblad.hpp"
#include "tclgen/quadrature.hpp"
#include "tclgen/superop.hpp"
#include "test_support.hpp"

using namespace tclgen;
using tclgen::testing::matrix_unit;
using tclgen::testing::Rng;

TEST_CASE("vec stacks columns")
{
    CHECK(vec(matrix_unit(2, 0, 0)) == CVector::Unit(4, 0));
    CHECK(vec(matrix_unit(2, 0, 1)) == CVector::Unit(4, 2));
    CHECK(vec(matrix_unit(2, 1, 0)) == CVector::Unit(4, 1));
    CHECK_THROWS_AS(vec(CMatrix::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(unvec(CVector::Zero(5)), DimensionError);
}

TEST_CASE("vec/unvec round trip is exact")
{
    Rng rng(11);
    for (int d : {2, 3, 4, 8}) {
        const CMatrix m = rng.square(d);
        CHECK(unvec(vec(m)) == m);
    }
}

TEST_CASE("sandwich_superop matches direct products")
{
    CHECK(max_abs(sandwich_superop(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)).matrix()
                  - CMatrix::Identity(4, 4)) == 0.0);

    // σ_z E_ij σ_z = s_i s_j E_ij with s = (1, −1); vec order is (11, 21, 12, 22).
    const SuperOp zz = sandwich_superop(ops::sigma_z(), ops::sigma_z());
    CMatrix expected = CMatrix::Zero(4, 4);
    expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
    CHECK(max_abs(zz.matrix() - expected) == 0.0);

    Rng rng(12);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 100; ++trial) {
            const CMatrix a = rng.square(d);
            const CMatrix b = rng.square(d);
            const CMatrix rho = rng.square(d);
            const SuperOp s = sandwich_superop(a, b);
            const CMatrix direct = a * rho * b;
            CHECK(max_abs(s.apply(rho) - direct) <= 1e-13 * std::max(1.0, max_abs(direct)));
        }
    }
    CHECK_THROWS_AS(sandwich_superop(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("SuperOp rejects malformed input")
{
    CHECK_THROWS_AS(SuperOp(2, CMatrix::Zero(3, 3)), DimensionError);
    CMatrix bad = CMatrix::Zero(4, 4);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(SuperOp(2, bad), ValidationError);
    CHECK_THROWS_AS(SuperOp::identity(2) + SuperOp::identity(3), DimensionError);
}

TEST_CASE("DensityMatrix invariants")
{
    Rng rng(13);
    CHECK_NOTHROW(DensityMatrix(rng.density(3)));
    CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(2, 2)), ValidationError);  // trace 2
    CMatrix neg(2, 2);
    neg << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
    CMatrix nonherm(2, 2);
    nonherm << 0.5, 0.1, 0.0, 0.5;
    CHECK_THROWS_AS(DensityMatrix{nonherm}, ValidationError);
}

TEST_CASE("choi spectra of standard maps")
{
    const auto id = hermitian_eigvals(choi(SuperOp::identity(2)).matrix());
    CHECK(id[0] == doctest::Approx(0.0));
    CHECK(id[3] == doctest::Approx(2.0));

    // Transpose map: Choi is the swap operator, eigenvalues (−1, 1, 1, 1).
    const auto tr = hermitian_eigvals(choi(transpose_map(2)).matrix());
    CHECK(tr[0] == doctest::Approx(-1.0));
    CHECK(tr[1] == doctest::Approx(1.0));
    CHECK(tr[3] == doctest::Approx(1.0));

    const auto zz = hermitian_eigvals(choi(sandwich_superop(ops::sigma_z(), ops::sigma_z())).matrix());
    CHECK(zz[0] == doctest::Approx(0.0));
    CHECK(zz[2] == doctest::Approx(0.0));
    CHECK(zz[3] == doctest::Approx(2.0));

    // Block (i, j) of the Choi matrix is Φ(E_ij).
    Rng rng(14);
    const SuperOp s(3, rng.square(9));
    const ChoiMatrix c = choi(s);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(max_abs(c.matrix().block(3 * i, 3 * j, 3, 3) - s.apply(matrix_unit(3, i, j))) == 0.0);
        }
    }
}

TEST_CASE("choi of Hermiticity-preserving maps is Hermitian")
{
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const SuperOp l = build_generator(rng.spec(trial % 2 ? 3 : 2, 2));
        const CMatrix c = choi(expm(l)).matrix();
        CHECK(max_abs(c - c.adjoint()) <= 1e-10);
        const CMatrix cl = choi(l).matrix();
        CHECK(max_abs(cl - cl.adjoint()) <= 1e-10);
    }
}

TEST_CASE("expm closed forms")
{
    CHECK(max_abs(expm(CMatrix::Zero(3, 3)) - CMatrix::Identity(3, 3)) == 0.0);

    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 0.7;
    diag(1, 1) = Complex(-2.0, 1.0);
    const CMatrix e = expm(diag);
    CHECK(std::abs(e(0, 0) - std::exp(0.7)) <= 1e-15);
    CHECK(std::abs(e(1, 1) - std::exp(Complex(-2.0, 1.0))) <= 1e-15);
    CHECK(std::abs(e(0, 1)) == 0.0);

    CMatrix nil = CMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    CMatrix want(2, 2);
    want << 1.0, 1.0, 0.0, 1.0;
    CHECK(max_abs(expm(nil) - want) <= 1e-15);
}

TEST_CASE("expm agrees with spectral and library oracles")
{
    Rng rng(16);
    for (double scale : {0.01, 0.3, 1.5, 4.0, 12.0, 50.0}) {
        for (int trial = 0; trial < 5; ++trial) {
            const CMatrix h = rng.hermitian(4);
            const double nrm = h.operatorNorm();
            // Anti-Hermitian and Hermitian arguments of spectral norm `scale`.
            for (Complex phase : {Complex(0.0, 1.0), Complex(1.0, 0.0)}) {
                const CMatrix a = phase * (scale / nrm) * h;
                Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
                const Eigen::VectorXcd ev =
                    (phase * (scale / nrm) * es.eigenvalues().cast<Complex>()).array().exp();
                const CMatrix oracle = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
                const CMatrix got = expm(a);
                CHECK(max_abs(got - oracle) <= 1e-12 * max_abs(oracle) * std::max(1.0, scale / 4.0));
            }
        }
        const CMatrix g = rng.square(5);
        const CMatrix a = (scale / g.operatorNorm()) * g;
        const CMatrix lib = a.exp();
        CHECK(max_abs(expm(a) - lib) <= 1e-11 * max_abs(lib) * std::max(1.0, scale / 4.0));
    }
}

TEST_CASE("expm(a)·expm(−a) = I")
{
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix g = rng.square(4);
        const CMatrix a = (rng.uniform(0.0, 5.0) / g.operatorNorm()) * g;
        CHECK(max_abs(expm(a) * expm(CMatrix(-a)) - CMatrix::Identity(4, 4)) <= 1e-11);
    }
}

TEST_CASE("expm overflow is a numerical-range error")
{
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1e6;
    CHECK_THROWS_AS(expm(a), NumericalRangeError);
}

TEST_CASE("expm_frechet special cases")
{
    Rng rng(18);
    const CMatrix e = rng.square(3);
    const auto at_zero = expm_frechet(CMatrix::Zero(3, 3), e);
    CHECK(max_abs(at_zero.derivative - e) <= 1e-15);
    CHECK(max_abs(at_zero.exp - CMatrix::Identity(3, 3)) <= 1e-15);

    const CMatrix a = rng.square(3);
    const CMatrix commuting = 0.3 * a * a - 1.2 * a;
    const auto fr = expm_frechet(a, commuting);
    CHECK(max_abs(fr.derivative - expm(a) * commuting) <= 1e-12 * max_abs(fr.derivative));
    CHECK(max_abs(fr.exp - expm(a)) <= 1e-12 * max_abs(fr.exp));

    CHECK_THROWS_AS(expm_frechet(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("expm_frechet matches finite differences and Gauss-Legendre quadrature")
{
    Rng rng(19);
    const auto rule = quad::gauss_legendre(16, 0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = rng.square(4);
        const CMatrix e = rng.square(4);
        const auto fr = expm_frechet(a, e);

        const double h = 1e-6;
        const CMatrix fd = (expm(CMatrix(a + h * e)) - expm(CMatrix(a - h * e))) / (2.0 * h);
        CHECK(max_abs(fr.derivative - fd) <= 1e-6 * std::max(1.0, max_abs(fd)));

        CMatrix wilcox = CMatrix::Zero(4, 4);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double s = rule.nodes[k];
            wilcox += rule.weights[k] * expm(CMatrix(s * a)) * e * expm(CMatrix((1.0 - s) * a));
        }
        CHECK(max_abs(fr.derivative - wilcox) <= 1e-9 * std::max(1.0, max_abs(wilcox)));
    }
}

TEST_CASE("hermitian_eigvals")
{
    const auto z = hermitian_eigvals(ops::sigma_z());
    REQUIRE(z.size() == 2);
    CHECK(z[0] == doctest::Approx(-1.0));
    CHECK(z[1] == doctest::Approx(1.0));

    for (double v : hermitian_eigvals(CMatrix::Identity(3, 3))) CHECK(v == doctest::Approx(1.0));

    CMatrix bad(2, 2);
    bad << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(hermitian_eigvals(bad), ValidationError);
}

TEST_CASE("hermitian_eigvals satisfy the power-sum identities")
{
    // Σ λ_k^p = tr(H^p) for p = 1..d determines the spectrum.
    Rng rng(20);
    for (int d : {2, 3, 5, 8}) {
        for (int trial = 0; trial < 10; ++trial) {
            const CMatrix h = rng.hermitian(d);
            const auto ev = hermitian_eigvals(h);
            for (std::size_t k = 1; k < ev.size(); ++k) CHECK(ev[k - 1] <= ev[k]);
            CMatrix power = CMatrix::Identity(d, d);
            for (int p = 1; p <= d; ++p) {
                power = power * h;
                double sum = 0.0;
                for (double l : ev) sum += std::pow(l, p);
                const double tr = power.trace().real();
                CHECK(std::abs(sum - tr) <= 1e-10 * std::max(1.0, std::abs(tr)) * p);
            }
        }
    }
}

TEST_CASE("trace_defect detects non-trace-preserving maps")
{
    CHECK(trace_defect(SuperOp::identity(3), 1.0) == 0.0);
    CHECK(trace_defect(SuperOp::zero(3), 0.0) == 0.0);
    CHECK(trace_defect(2.0 * SuperOp::identity(2), 1.0) == doctest::Approx(1.0));
    CHECK(trace_defect(transpose_map(2), 1.0) == 0.0);
}
