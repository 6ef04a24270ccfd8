#pragma once

#include <nnprod/numeric.hpp>
#include <nnprod/spectral.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nnprod {

/// Zero-based index into a MatrixCollection.
using Letter = std::size_t;

/// A named, dimension-checked family {A_1, ..., A_N}.
class MatrixCollection {
public:
    struct Validation {
        bool nonnegative = true;
        std::vector<bool> nonnegative_each;
        std::vector<double> rho;
        std::vector<bool> rho_ok;
        bool all_rho_ok = true;
    };

    /// Throws DimensionMismatch for unequal or non-square shapes and
    /// InvalidInput for empty families, duplicate names or non-finite entries.
    MatrixCollection(std::vector<std::string> names, std::vector<Matrix> matrices);
    /// Names the matrices A, B, C, ... (A1, A2, ... beyond 26).
    explicit MatrixCollection(std::vector<Matrix> matrices);

    std::size_t size() const noexcept { return matrices_.size(); }
    std::size_t dimension() const noexcept { return matrices_.front().rows(); }
    const Matrix& operator[](Letter r) const { return matrices_.at(r); }
    const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<Letter> index_of(const std::string& name) const;

    bool nonnegative() const noexcept;
    /// Spectral radius of every member, computed on demand.
    std::vector<double> spectral_radii() const;
    Validation validation(double rho_tol) const;

private:
    std::vector<std::string> names_;
    std::vector<Matrix> matrices_;
};

struct StructureOptions {
    /// Absolute threshold for commutator norms and kernel singular values.
    double tol = 1e-9;
    /// |lambda| within this of 1 counts as modulus one (kappa).
    double modulus_tol = 1e-8;
    /// Entrywise tolerance when matching conjugate vector pairs.
    double conjugate_tol = 1e-10;
    SpectralOptions spectral{};
};

/// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Orthonormal basis of the intersection of ker [A^k, B^l] for 1 <= k, l <= n-1.
Matrix shemesh_subspace(const Matrix& a, const Matrix& b, double tol = 1e-9);

struct PairClassification {
    bool commuting = false;
    bool quasi_commuting = false;
    bool laffey = false;
    std::size_t shemesh_dimension = 0;
    std::size_t commutator_rank = 0;

    bool partially_commuting() const noexcept { return shemesh_dimension >= 1; }
};

PairClassification classify_pair(const Matrix& a, const Matrix& b, double tol = 1e-9);

struct QuasiCommutingWitness {
    Letter r = 0;
    Letter s = 0;
    /// Letter whose commutator with [A_r, A_s] is too large.
    Letter offender = 0;
    double norm = 0.0;
};

struct QuasiCommutingResult {
    bool quasi_commuting = true;
    std::optional<QuasiCommutingWitness> witness;
};

QuasiCommutingResult is_quasi_commuting(const MatrixCollection& collection, double tol = 1e-9);

/// Common eigenvectors E' with their eigenvalue table.
struct CommonEigenSystem {
    std::vector<CVector> vectors;
    /// lambda[s][r]: eigenvalue of A_r on vectors[s].
    std::vector<std::vector<Complex>> lambda;
    /// vectors[0..kappa) have modulus-one eigenvalues under every matrix.
    std::size_t kappa = 0;
    /// (s1, s2) with vectors[s1] == conj(vectors[s2]), s1 < s2.
    std::vector<std::pair<std::size_t, std::size_t>> s2_pairs;
    /// Vectors sharing a group id span one common eigenspace.
    std::vector<std::size_t> group;

    std::size_t d() const noexcept { return vectors.size(); }
    bool empty() const noexcept { return vectors.empty(); }
    std::size_t dimension() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }
    std::optional<std::size_t> conjugate_of(std::size_t s) const;
};

/// Recursive eigenspace refinement: start from the eigenspaces of A_1, and
/// split every surviving subspace by the eigenvalues of each further A_r.
CommonEigenSystem common_eigenvectors(const MatrixCollection& collection, const StructureOptions& opts = {});
CommonEigenSystem common_eigenvectors(const std::vector<ComplexMatrix>& family, const StructureOptions& opts = {});

/// Unitary U with every U^H A_r U upper triangular, found by repeatedly
/// deflating a common eigenvector. Empty when some stage has none.
std::optional<ComplexMatrix> simultaneous_triangularization(const MatrixCollection& collection,
                                                            const StructureOptions& opts = {});

struct LCCoefficients {
    CVector alphas;
    double residual = 0.0;
};

/// Coefficients of x in LC(E'), or empty when x is not (numerically) such a
/// combination with conjugate-paired / real coefficients.
std::optional<LCCoefficients> lc_membership(std::span<const double> x, const CommonEigenSystem& system,
                                            double tol = 1e-8);

/// Every member has a complete set of eigenvectors.
bool all_diagonalizable(const MatrixCollection& collection, const SpectralOptions& opts = {});
bool pairwise_commuting(const MatrixCollection& collection, double tol = 1e-9);

} // namespace nnprod
