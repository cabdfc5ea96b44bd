// superop.hpp: Dense operator and superoperator algebra
//
// Operators are d×d complex matrices. Superoperators are d²×d² matrices acting
// on column-stacked operators: vec(X) stacks the columns of X top to bottom,
// and the map X ↦ A X B is represented by kron(Bᵀ, A). Every module in tclgen
// relies on this convention.

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tclgen {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kUnitTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kEigHermiticity = 1e-10;
inline constexpr double kCpt = 1e-10;
} // namespace tol

// Largest absolute entry. Used as the matrix distance throughout tclgen.
double max_abs(const CMatrix& m);

bool all_finite(const CMatrix& m);

// Throws ValidationError when any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);

void require_square(const CMatrix& m, const char* what);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Standard Kronecker product; block (i, j) of the result is a(i, j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

CVector vec(const CMatrix& op);
CMatrix unvec(const CVector& v);

/// A d×d density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix mat);

    const CMatrix& matrix() const noexcept { return mat_; }
    int dim() const noexcept { return static_cast<int>(mat_.rows()); }

private:
    CMatrix mat_;
};

/// Linear map on d×d operators in the column-stacking representation.
class SuperOp {
public:
    SuperOp(int dim, CMatrix mat);

    static SuperOp identity(int dim);
    static SuperOp zero(int dim);

    int dim() const noexcept { return dim_; }
    const CMatrix& matrix() const noexcept { return mat_; }

    CMatrix apply(const CMatrix& op) const;

    SuperOp operator+(const SuperOp& rhs) const;
    SuperOp operator-(const SuperOp& rhs) const;
    SuperOp operator*(const SuperOp& rhs) const;
    SuperOp operator-() const;
    friend SuperOp operator*(double s, const SuperOp& op);
    friend SuperOp operator*(Complex s, const SuperOp& op);

private:
    int dim_;
    CMatrix mat_;
};

double max_abs(const SuperOp& s);
double distance(const SuperOp& a, const SuperOp& b);
SuperOp commutator(const SuperOp& a, const SuperOp& b);

/// The superoperator of ρ ↦ a ρ b, i.e. kron(bᵀ, a).
SuperOp sandwich_superop(const CMatrix& a, const CMatrix& b);

/// The map ρ ↦ ρᵀ (positive but not completely positive).
SuperOp transpose_map(int dim);

/// Unnormalized Choi matrix Σ_ij E_ij ⊗ Φ(E_ij).
class ChoiMatrix {
public:
    explicit ChoiMatrix(const SuperOp& s);

    int dim() const noexcept { return dim_; }
    const CMatrix& matrix() const noexcept { return mat_; }

private:
    int dim_;
    CMatrix mat_;
};

ChoiMatrix choi(const SuperOp& s);

// Largest entry of |Φ†(I) − target·I|. target = 1 tests trace preservation
// of a map, target = 0 tests that a generator annihilates the trace.
double trace_defect(const SuperOp& s, double target);

/// Matrix exponential by scaling and squaring with Padé approximants.
/// Throws NumericalRangeError when the result overflows.
CMatrix expm(const CMatrix& a);
SuperOp expm(const SuperOp& s);

struct FrechetResult {
    CMatrix exp;
    CMatrix derivative;  // ∫₀¹ e^{sA} E e^{(1−s)A} ds
};

/// expm(a) and its directional derivative along e, read off the block
/// exponential of [[a, e], [0, a]].
FrechetResult expm_frechet(const CMatrix& a, const CMatrix& e);

/// Ascending real eigenvalues of a Hermitian matrix. Throws ValidationError
/// when max |a − a†| exceeds herm_tol·max(1, max_abs(a)).
std::vector<double> hermitian_eigvals(const CMatrix& a,
                                      double herm_tol = tol::kEigHermiticity);

} // namespace tclgen
