// superop.cpp: Dense operator and superoperator algebra

#include "tclgen/superop.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "tclgen/errors.hpp"

namespace tclgen {

double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const CMatrix& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
        }
    }
    return true;
}

void require_finite(const CMatrix& m, const char* what)
{
    if (!all_finite(m)) {
        throw ValidationError(std::string(what) + ": matrix has non-finite entries");
    }
}

void require_square(const CMatrix& m, const char* what)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
}

CMatrix commutator(const CMatrix& a, const CMatrix& b)
{
    return a * b - b * a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector vec(const CMatrix& op)
{
    require_square(op, "vec");
    // Eigen storage is column-major, so the reshape is column stacking.
    return Eigen::Map<const CVector>(op.data(), op.size());
}

CMatrix unvec(const CVector& v)
{
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d == 0 || d * d != v.size()) {
        throw DimensionError("unvec: vector length " + std::to_string(v.size()) + " is not a square");
    }
    return Eigen::Map<const CMatrix>(v.data(), d, d);
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(CMatrix mat) : mat_(std::move(mat))
{
    require_square(mat_, "DensityMatrix");
    require_finite(mat_, "DensityMatrix");
    const double herm = max_abs(mat_ - mat_.adjoint());
    if (herm > tol::kHermiticity) {
        throw ValidationError("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol::kUnitTrace) {
        throw ValidationError("DensityMatrix: trace differs from 1");
    }
    const auto eig = hermitian_eigvals(mat_);
    if (eig.front() < -tol::kPsd) {
        std::ostringstream os;
        os << "DensityMatrix: negative eigenvalue " << eig.front();
        throw ValidationError(os.str());
    }
}

// ---------------------------------------------------------------------------

SuperOp::SuperOp(int dim, CMatrix mat) : dim_(dim), mat_(std::move(mat))
{
    if (dim_ <= 0) throw DimensionError("SuperOp: dimension must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(dim_) * dim_;
    if (mat_.rows() != n || mat_.cols() != n) {
        std::ostringstream os;
        os << "SuperOp: expected " << n << "x" << n << " matrix for d=" << dim_ << ", got "
           << mat_.rows() << "x" << mat_.cols();
        throw DimensionError(os.str());
    }
    require_finite(mat_, "SuperOp");
}

SuperOp SuperOp::identity(int dim)
{
    return SuperOp(dim, CMatrix::Identity(dim * dim, dim * dim));
}

SuperOp SuperOp::zero(int dim)
{
    return SuperOp(dim, CMatrix::Zero(dim * dim, dim * dim));
}

CMatrix SuperOp::apply(const CMatrix& op) const
{
    if (op.rows() != dim_ || op.cols() != dim_) {
        throw DimensionError("SuperOp::apply: operator dimension mismatch");
    }
    return unvec(mat_ * vec(op));
}

namespace {

void require_same_dim(const SuperOp& a, const SuperOp& b, const char* what)
{
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(what) + ": superoperator dimensions differ ("
                             + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

} // namespace

SuperOp SuperOp::operator+(const SuperOp& rhs) const
{
    require_same_dim(*this, rhs, "SuperOp::operator+");
    return SuperOp(dim_, mat_ + rhs.mat_);
}

SuperOp SuperOp::operator-(const SuperOp& rhs) const
{
    require_same_dim(*this, rhs, "SuperOp::operator-");
    return SuperOp(dim_, mat_ - rhs.mat_);
}

SuperOp SuperOp::operator*(const SuperOp& rhs) const
{
    require_same_dim(*this, rhs, "SuperOp::operator*");
    return SuperOp(dim_, mat_ * rhs.mat_);
}

SuperOp SuperOp::operator-() const
{
    return SuperOp(dim_, -mat_);
}

SuperOp operator*(double s, const SuperOp& op)
{
    return SuperOp(op.dim_, s * op.mat_);
}

SuperOp operator*(Complex s, const SuperOp& op)
{
    return SuperOp(op.dim_, s * op.mat_);
}

double max_abs(const SuperOp& s)
{
    return max_abs(s.matrix());
}

double distance(const SuperOp& a, const SuperOp& b)
{
    require_same_dim(a, b, "distance");
    return max_abs(a.matrix() - b.matrix());
}

SuperOp commutator(const SuperOp& a, const SuperOp& b)
{
    require_same_dim(a, b, "commutator");
    return SuperOp(a.dim(), commutator(a.matrix(), b.matrix()));
}

SuperOp sandwich_superop(const CMatrix& a, const CMatrix& b)
{
    require_square(a, "sandwich_superop(a)");
    require_square(b, "sandwich_superop(b)");
    if (a.rows() != b.rows()) {
        throw DimensionError("sandwich_superop: operand dimensions differ");
    }
    return SuperOp(static_cast<int>(a.rows()), kron(b.transpose(), a));
}

SuperOp transpose_map(int dim)
{
    const int n = dim * dim;
    CMatrix m = CMatrix::Zero(n, n);
    // vec index of E_ij is j*d + i; the transpose sends it to i*d + j.
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i * dim + j, j * dim + i) = 1.0;
    }
    return SuperOp(dim, std::move(m));
}

// ---------------------------------------------------------------------------

ChoiMatrix::ChoiMatrix(const SuperOp& s) : dim_(s.dim()), mat_(s.matrix().rows(), s.matrix().cols())
{
    const int d = dim_;
    const CMatrix& m = s.matrix();
    // Block (i, j) is Φ(E_ij) = unvec(column j*d + i of m).
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    mat_(i * d + k, j * d + l) = m(l * d + k, j * d + i);
                }
            }
        }
    }
}

ChoiMatrix choi(const SuperOp& s)
{
    return ChoiMatrix(s);
}

double trace_defect(const SuperOp& s, double target)
{
    const int d = s.dim();
    // Row vector vec(I)ᵀ·S holds tr Φ(E_ij) for each matrix unit.
    Eigen::RowVectorXcd row = vec(CMatrix::Identity(d, d)).transpose() * s.matrix();
    Eigen::RowVectorXcd want = target * vec(CMatrix::Identity(d, d)).transpose();
    return (row - want).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

namespace {

double norm1(const CMatrix& a)
{
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Padé coefficients b_k for degrees 3, 5, 7, 9, 13.
constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                       25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                        30270240.0,    2162160.0,    110880.0,     3960.0,
                                        90.0,          1.0};
constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norms for which each Padé degree attains unit roundoff.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
std::pair<CMatrix, CMatrix> pade_uv_low(const CMatrix& a, const std::array<double, N>& b)
{
    const Eigen::Index n = a.rows();
    const CMatrix ident = CMatrix::Identity(n, n);
    const CMatrix a2 = a * a;
    CMatrix even = b[0] * ident;
    CMatrix odd = b[1] * ident;
    CMatrix power = ident;
    for (std::size_t k = 2; k + 1 < N + 1; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    return {a * odd, even};
}

std::pair<CMatrix, CMatrix> pade_uv_13(const CMatrix& a)
{
    const auto& b = kPade13;
    const Eigen::Index n = a.rows();
    const CMatrix ident = CMatrix::Identity(n, n);
    const CMatrix a2 = a * a;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a4 * a2;
    const CMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4
                            + b[3] * a2 + b[1] * ident;
    const CMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4
                      + b[2] * a2 + b[0] * ident;
    return {a * u_inner, v};
}

} // namespace

CMatrix expm(const CMatrix& a)
{
    require_square(a, "expm");
    require_finite(a, "expm");
    const double nrm = norm1(a);

    std::pair<CMatrix, CMatrix> uv;
    int squarings = 0;
    if (nrm <= kTheta3) {
        uv = pade_uv_low(a, kPade3);
    } else if (nrm <= kTheta5) {
        uv = pade_uv_low(a, kPade5);
    } else if (nrm <= kTheta7) {
        uv = pade_uv_low(a, kPade7);
    } else if (nrm <= kTheta9) {
        uv = pade_uv_low(a, kPade9);
    } else {
        if (nrm > kTheta13) {
            squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
        }
        if (squarings > 1000) {
            throw NumericalRangeError("expm: matrix norm too large to exponentiate");
        }
        const CMatrix scaled = a * std::ldexp(1.0, -squarings);
        uv = pade_uv_13(scaled);
    }

    const auto& [u, v] = uv;
    CMatrix result = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        result = result * result;
    }
    if (!all_finite(result)) {
        throw NumericalRangeError("expm: result overflowed (1-norm of input " + std::to_string(nrm) + ")");
    }
    return result;
}

SuperOp expm(const SuperOp& s)
{
    return SuperOp(s.dim(), expm(s.matrix()));
}

FrechetResult expm_frechet(const CMatrix& a, const CMatrix& e)
{
    require_square(a, "expm_frechet(a)");
    require_square(e, "expm_frechet(e)");
    if (a.rows() != e.rows()) {
        throw DimensionError("expm_frechet: operand dimensions differ");
    }
    const Eigen::Index n = a.rows();
    CMatrix block = CMatrix::Zero(2 * n, 2 * n);
    block.topLeftCorner(n, n) = a;
    block.topRightCorner(n, n) = e;
    block.bottomRightCorner(n, n) = a;
    const CMatrix big = expm(block);
    return {big.topLeftCorner(n, n), big.topRightCorner(n, n)};
}

std::vector<double> hermitian_eigvals(const CMatrix& a, double herm_tol)
{
    require_square(a, "hermitian_eigvals");
    require_finite(a, "hermitian_eigvals");
    const double defect = max_abs(a - a.adjoint());
    if (defect > herm_tol * std::max(1.0, max_abs(a))) {
        std::ostringstream os;
        os << "hermitian_eigvals: matrix is not Hermitian (max |A - A^H| = " << defect << ")";
        throw ValidationError(os.str());
    }
    const CMatrix herm = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eigvals: eigensolver did not converge");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

} // namespace tclgen
