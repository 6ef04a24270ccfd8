#pragma once

#include <nnprod/numeric.hpp>

#include <optional>
#include <vector>

namespace nnprod {

struct SpectralOptions {
    /// Eigenvalues closer than cluster_rel * max(1, rho) are treated as equal.
    double cluster_rel = 1e-8;
    /// Singular-value threshold (relative to max(1, ||A||)) for eigenvector kernels.
    double vector_rel = 1e-9;
    /// QR sweeps allowed per deflated eigenvalue before giving up.
    int max_sweeps_per_eigenvalue = 100;
};

/// One eigenvector of the geometric eigenspace of `eigenvalue`. A defective
/// eigenvalue yields fewer pairs than its algebraic multiplicity.
struct EigenPair {
    Complex eigenvalue;
    CVector eigenvector;
    double residual = 0.0;
    std::size_t algebraic_multiplicity = 1;
    std::size_t geometric_multiplicity = 1;

    bool deficient() const noexcept { return geometric_multiplicity < algebraic_multiplicity; }
};

struct EigenDecomposition {
    /// All n eigenvalues, repeated by algebraic multiplicity, sorted by
    /// descending modulus then ascending argument in [0, 2pi).
    CVector eigenvalues;
    std::vector<EigenPair> pairs;
    double cluster_tol = 0.0;

    bool defective() const noexcept;
    double spectral_radius() const noexcept;
};

/// Raw eigenvalues (unclustered) via balancing, Hessenberg reduction and
/// shifted complex QR. Throws ConvergenceFailure past the sweep cap.
CVector qr_eigenvalues(const ComplexMatrix& a, int max_sweeps_per_eigenvalue = 100);

EigenDecomposition eigendecompose(const Matrix& a, const SpectralOptions& opts = {});
EigenDecomposition eigendecompose(const ComplexMatrix& a, const SpectralOptions& opts = {});

double spectral_radius(const Matrix& a);

/// Smallest d in [1, max_order] with |lambda^d - 1| <= tol.
std::optional<unsigned> root_of_unity_order(Complex lambda, unsigned max_order, double tol);

struct PeripheralOptions {
    double rho_tol = 1e-8;
    double root_tol = 1e-8;
    SpectralOptions spectral{};
};

struct PeripheralReport {
    double rho = 0.0;
    /// Peripheral eigenvalues with algebraic multiplicity.
    CVector values;
    /// Root-of-unity orders, parallel to `values`; only searched when rho ~ 1.
    std::vector<std::optional<unsigned>> orders;
    /// Geometric eigenvectors of the peripheral eigenvalues.
    std::vector<EigenPair> pairs;
    /// lcm of `orders` when every order exists.
    std::optional<unsigned long long> period;
};

/// Peripheral spectrum and per-matrix period. Throws NotRootOfUnity when
/// rho ~ 1 and a peripheral eigenvalue of this nonnegative matrix has no
/// order <= n.
PeripheralReport peripheral_period(const Matrix& a, const PeripheralOptions& opts = {});

/// Strong connectivity of the nonzero-pattern digraph.
bool is_irreducible(const Matrix& a);

/// Number of eigenvalues of modulus rho(A). Throws Reducible for reducible A.
unsigned index_of_imprimitivity(const Matrix& a, const SpectralOptions& opts = {});

} // namespace nnprod
