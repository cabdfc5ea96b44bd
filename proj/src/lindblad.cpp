// lindblad.cpp: Lindblad generators and CPT / CCP certification

#include "tclgen/lindblad.hpp"

#include <cmath>
#include <sstream>

#include "tclgen/errors.hpp"

namespace tclgen {

namespace {

const Complex kI(0.0, 1.0);

std::string fmt_double(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CMatrix max_entangled_projector_complement(int d)
{
    // P = I − |ω⟩⟨ω|/d, |ω⟩ = Σ_i |i⟩⊗|i⟩ (index i*d + i).
    const int n = d * d;
    CMatrix p = CMatrix::Identity(n, n);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) -= 1.0 / d;
    }
    return p;
}

} // namespace

LindbladSpec::LindbladSpec(CMatrix hamiltonian, std::vector<NoiseTerm> noise)
    : hamiltonian_(std::move(hamiltonian)), noise_(std::move(noise))
{
    require_square(hamiltonian_, "LindbladSpec hamiltonian");
    require_finite(hamiltonian_, "LindbladSpec hamiltonian");
    const double herm = max_abs(hamiltonian_ - hamiltonian_.adjoint());
    if (herm > tol::kHermiticity) {
        throw ValidationError("LindbladSpec: hamiltonian is not Hermitian (max |H - H^H| = "
                              + fmt_double(herm) + ")");
    }
    for (std::size_t k = 0; k < noise_.size(); ++k) {
        const auto& term = noise_[k];
        if (!std::isfinite(term.rate) || term.rate < 0.0) {
            throw ValidationError("LindbladSpec: noise term " + std::to_string(k)
                                  + " has negative or non-finite rate " + fmt_double(term.rate));
        }
        if (term.op.rows() != hamiltonian_.rows() || term.op.cols() != hamiltonian_.cols()) {
            throw DimensionError("LindbladSpec: noise term " + std::to_string(k)
                                 + " operator dimension does not match the hamiltonian");
        }
        require_finite(term.op, "LindbladSpec noise operator");
    }
}

namespace ops {

CMatrix identity(int d)
{
    return CMatrix::Identity(d, d);
}

CMatrix sigma_x()
{
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix sigma_y()
{
    CMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

CMatrix sigma_z()
{
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

CMatrix sigma_plus()
{
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

CMatrix sigma_minus()
{
    CMatrix m = CMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

CMatrix projector(int d, int n)
{
    if (n < 0 || n >= d) throw DimensionError("projector: index out of range");
    CMatrix m = CMatrix::Zero(d, d);
    m(n, n) = 1.0;
    return m;
}

} // namespace ops

SuperOp build_generator(const LindbladSpec& spec)
{
    const int d = spec.dim();
    const CMatrix ident = CMatrix::Identity(d, d);
    const CMatrix& h = spec.hamiltonian();

    CMatrix m = -kI * (kron(ident, h) - kron(h.transpose(), ident));
    for (const auto& term : spec.noise()) {
        if (term.rate == 0.0) continue;
        const CMatrix& v = term.op;
        const CMatrix vdv = v.adjoint() * v;
        // V ρ V† ↦ kron(conj(V), V); {V†V, ρ} ↦ kron(I, V†V) + kron((V†V)ᵀ, I).
        m += term.rate
             * (kron(v.conjugate(), v) - 0.5 * (kron(ident, vdv) + kron(vdv.transpose(), ident)));
    }
    return SuperOp(d, std::move(m));
}

double min_choi_eigenvalue(const SuperOp& s)
{
    const ChoiMatrix c = choi(s);
    const CMatrix herm = 0.5 * (c.matrix() + c.matrix().adjoint());
    return hermitian_eigvals(herm).front();
}

Verdict is_lindblad_generator(const SuperOp& s, double tol)
{
    const int d = s.dim();
    const ChoiMatrix c = choi(s);
    const double herm = max_abs(c.matrix() - c.matrix().adjoint());
    if (herm > tol * std::max(1.0, max_abs(c.matrix()))) {
        return Verdict::fail(tol, herm, "does not preserve Hermiticity (Choi asymmetry)");
    }
    const double tdef = trace_defect(s, 0.0);
    if (tdef > tol) {
        return Verdict::fail(tol, tdef, "adjoint does not annihilate the identity (trace defect)");
    }
    const CMatrix p = max_entangled_projector_complement(d);
    const CMatrix compressed = p * (0.5 * (c.matrix() + c.matrix().adjoint())) * p;
    const double lo = hermitian_eigvals(0.5 * (compressed + compressed.adjoint())).front();
    if (lo < -tol) {
        return Verdict::fail(tol, lo, "compressed Choi matrix has a negative eigenvalue (not CCP)");
    }
    return Verdict::pass(tol);
}

Verdict is_cpt_map(const SuperOp& s, double tol)
{
    const ChoiMatrix c = choi(s);
    const double herm = max_abs(c.matrix() - c.matrix().adjoint());
    if (herm > tol * std::max(1.0, max_abs(c.matrix()))) {
        return Verdict::fail(tol, herm, "Choi matrix is not Hermitian");
    }
    const double lo = hermitian_eigvals(0.5 * (c.matrix() + c.matrix().adjoint())).front();
    if (lo < -tol) {
        return Verdict::fail(tol, lo, "Choi matrix has a negative eigenvalue (not completely positive)");
    }
    const double tdef = trace_defect(s, 1.0);
    if (tdef > tol) {
        return Verdict::fail(tol, tdef, "adjoint does not map I to I (trace defect)");
    }
    return Verdict::pass(tol);
}

std::vector<CMatrix> default_basis(int d)
{
    if (d < 2) throw DimensionError("default_basis: dimension must be at least 2");
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d * d - 1));
    const double r2 = std::sqrt(2.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix sym = CMatrix::Zero(d, d);
            sym(j, k) = 1.0 / r2;
            sym(k, j) = 1.0 / r2;
            basis.push_back(sym);
            CMatrix asym = CMatrix::Zero(d, d);
            asym(j, k) = -kI / r2;
            asym(k, j) = kI / r2;
            basis.push_back(asym);
        }
    }
    for (int l = 1; l < d; ++l) {
        CMatrix diag = CMatrix::Zero(d, d);
        const double norm = std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) diag(j, j) = 1.0 / norm;
        diag(l, l) = -static_cast<double>(l) / norm;
        basis.push_back(diag);
    }
    return basis;
}

GksDecomposition gks_matrix(const SuperOp& s, const std::vector<CMatrix>& basis, double tol)
{
    const int d = s.dim();
    const auto n = static_cast<std::size_t>(d * d - 1);
    if (basis.size() != n) {
        throw ValidationError("gks_matrix: basis must have d^2-1 = " + std::to_string(n) + " elements");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (basis[i].rows() != d || basis[i].cols() != d) {
            throw DimensionError("gks_matrix: basis element " + std::to_string(i) + " has wrong shape");
        }
        if (std::abs(basis[i].trace()) > 1e-10) {
            throw ValidationError("gks_matrix: basis element " + std::to_string(i) + " is not traceless");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Complex ip = (basis[i].adjoint() * basis[j]).trace();
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(ip - want) > 1e-10) {
                throw ValidationError("gks_matrix: basis is not trace-orthonormal");
            }
        }
    }
    const ChoiMatrix c = choi(s);
    if (max_abs(c.matrix() - c.matrix().adjoint()) > tol * std::max(1.0, max_abs(c.matrix()))) {
        throw ValidationError("gks_matrix: superoperator does not preserve Hermiticity");
    }

    // Full basis F_0 = I/√d, F_1..F_n. The products kron(conj(F_j), F_i) are
    // Hilbert–Schmidt orthonormal, so the expansion coefficients of
    // S = Σ c_ij kron(conj(F_j), F_i) are plain inner products.
    std::vector<CMatrix> full;
    full.reserve(n + 1);
    full.push_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    full.insert(full.end(), basis.begin(), basis.end());

    const auto m = static_cast<Eigen::Index>(n + 1);
    CMatrix coeff(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const CMatrix k = kron(full[static_cast<std::size_t>(j)].conjugate(),
                                   full[static_cast<std::size_t>(i)]);
            coeff(i, j) = k.conjugate().cwiseProduct(s.matrix()).sum();
        }
    }

    CMatrix f = CMatrix::Zero(d, d);
    for (std::size_t i = 1; i <= n; ++i) {
        f += coeff(static_cast<Eigen::Index>(i), 0) * full[i];
    }
    f /= std::sqrt(static_cast<double>(d));

    GksDecomposition out;
    out.hamiltonian = Complex(0.0, 0.5) * (f - f.adjoint());
    out.hamiltonian -= (out.hamiltonian.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
    const CMatrix kos = coeff.bottomRightCorner(m - 1, m - 1);
    out.kossakowski = 0.5 * (kos + kos.adjoint());
    out.min_eigenvalue = hermitian_eigvals(out.kossakowski).front();
    out.ccp = out.min_eigenvalue >= -tol;
    out.basis = basis;
    return out;
}

LindbladSpec GksDecomposition::to_spec() const
{
    if (!ccp) {
        throw ValidationError("GksDecomposition::to_spec: Kossakowski matrix has negative eigenvalue "
                              + fmt_double(min_eigenvalue));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(kossakowski);
    const Eigen::VectorXd& rates = solver.eigenvalues();
    const CMatrix& vecs = solver.eigenvectors();
    const Eigen::Index d = hamiltonian.rows();

    std::vector<NoiseTerm> noise;
    for (Eigen::Index a = 0; a < rates.size(); ++a) {
        const double rate = std::max(0.0, rates(a));
        if (rate == 0.0) continue;
        CMatrix v = CMatrix::Zero(d, d);
        for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
            v += vecs(i, a) * basis[static_cast<std::size_t>(i)];
        }
        noise.push_back({rate, v});
    }
    return LindbladSpec(0.5 * (hamiltonian + hamiltonian.adjoint()), std::move(noise));
}

} // namespace tclgen
