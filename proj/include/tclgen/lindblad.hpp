// lindblad.hpp: Lindblad generators and CPT / CCP certification

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tclgen/superop.hpp"

namespace tclgen {

struct NoiseTerm {
    double rate;
    CMatrix op;
};

/// Hamiltonian plus (rate, noise operator) pairs of a Lindblad generator.
class LindbladSpec {
public:
    /// Throws ValidationError for a non-Hermitian Hamiltonian or a negative
    /// rate; the message names the offending term index.
    LindbladSpec(CMatrix hamiltonian, std::vector<NoiseTerm> noise);

    int dim() const noexcept { return static_cast<int>(hamiltonian_.rows()); }
    const CMatrix& hamiltonian() const noexcept { return hamiltonian_; }
    const std::vector<NoiseTerm>& noise() const noexcept { return noise_; }

private:
    CMatrix hamiltonian_;
    std::vector<NoiseTerm> noise_;
};

struct Witness {
    double value;
    std::string description;
};

struct Verdict {
    bool passed = true;
    std::optional<Witness> witness;
    double tolerance_used = 0.0;

    static Verdict pass(double tol) { return Verdict{true, std::nullopt, tol}; }
    static Verdict fail(double tol, double value, std::string description)
    {
        return Verdict{false, Witness{value, std::move(description)}, tol};
    }
};

namespace ops {
CMatrix identity(int d);
CMatrix sigma_x();
CMatrix sigma_y();
CMatrix sigma_z();
CMatrix sigma_plus();   // |1⟩⟨2|
CMatrix sigma_minus();  // |2⟩⟨1|
CMatrix projector(int d, int n);  // |n⟩⟨n|, zero-based
} // namespace ops

/// ρ ↦ −i[H,ρ] + Σ γ (V ρ V† − ½{V†V, ρ}).
SuperOp build_generator(const LindbladSpec& spec);

/// Hermiticity preservation, trace annihilation, and conditional complete
/// positivity of the Choi matrix compressed by P = I − |ω⟩⟨ω|/d.
Verdict is_lindblad_generator(const SuperOp& s, double tol = tol::kCpt);

/// Choi matrix positive semidefinite and Φ†(I) = I, both within tol.
Verdict is_cpt_map(const SuperOp& s, double tol = tol::kCpt);

/// Smallest eigenvalue of the (Hermitized) Choi matrix.
double min_choi_eigenvalue(const SuperOp& s);

/// Trace-orthonormal, traceless basis of size d²−1: Pauli/√2 for d = 2,
/// normalized generalized Gell-Mann matrices otherwise.
std::vector<CMatrix> default_basis(int d);

struct GksDecomposition {
    CMatrix hamiltonian;   // traceless
    CMatrix kossakowski;   // (d²−1)×(d²−1) Hermitian coefficient matrix
    double min_eigenvalue; // of the Kossakowski matrix
    bool ccp;              // min_eigenvalue ≥ −tol
    std::vector<CMatrix> basis;

    /// Diagonalizes the Kossakowski matrix into (rate, operator) pairs.
    /// Throws ValidationError when the decomposition is not CCP.
    LindbladSpec to_spec() const;
};

/// Extracts the traceless Hamiltonian and Kossakowski matrix of a generator
/// relative to a trace-orthonormal traceless basis.
GksDecomposition gks_matrix(const SuperOp& s, const std::vector<CMatrix>& basis,
                            double tol = tol::kCpt);

} // namespace tclgen
