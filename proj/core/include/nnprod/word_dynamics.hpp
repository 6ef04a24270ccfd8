#pragma once

#include <nnprod/structure.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nnprod {

/// Finite word; letters[0] is applied first.
struct Word {
    std::vector<Letter> letters;

    std::size_t length() const noexcept { return letters.size(); }
    bool covers_all(std::size_t n_letters) const;
    /// Sorted distinct letters.
    std::vector<Letter> alphabet() const;
    /// Occurrences of each letter r < n_letters.
    std::vector<std::size_t> counts(std::size_t n_letters) const;
};

/// "ABBA" is matched greedily against the longest collection name; text that
/// contains spaces or commas is split into one name per token.
Word parse_word(const MatrixCollection& collection, std::string_view text);
std::string word_to_string(const MatrixCollection& collection, const Word& word);
/// Factor order of the product, e.g. "B*A" for the word "AB".
std::string factor_order(const MatrixCollection& collection, const Word& word);

/// A_{w_p} ... A_{w_1}. Throws InvalidLetter / InvalidInput (empty word).
Matrix word_product(const MatrixCollection& collection, const Word& word);

struct PeriodOptions {
    double rho_tol = 1e-8;
    PeripheralOptions peripheral{};
};

struct PeriodCertificate {
    /// Letters that took part, ascending.
    std::vector<Letter> letters;
    /// q_r parallel to `letters`.
    std::vector<unsigned long long> q_r;
    unsigned long long q = 1;
};

/// q_r from the peripheral spectrum; matrices with rho < 1 - rho_tol count as
/// q_r = 1. Throws SpectralRadiusViolation when some rho > 1 + rho_tol.
PeriodCertificate global_period(const MatrixCollection& collection, const PeriodOptions& opts = {});
/// Same, restricted to the letters occurring in `word`.
PeriodCertificate word_period(const MatrixCollection& collection, const Word& word, const PeriodOptions& opts = {});

struct OrbitBound {
    bool bounded_so_far = true;
    /// First step k with ||A_w^k x||_inf > bound.
    std::optional<std::size_t> exceeded_at;
    double last_norm = 0.0;
};

OrbitBound orbit_bounded(const MatrixCollection& collection, const Word& word, std::span<const double> x,
                         std::size_t horizon, double bound);

enum class LimitStatus { Converged, Diverged, MaxIter };
std::string_view to_string(LimitStatus status) noexcept;

struct LimitOptions {
    double tol = 1e-10;
    unsigned long long max_iter = 100000;
    double bound = 1e12;
};

struct LimitResult {
    Vector xi;
    /// Number of q-blocks applied.
    unsigned long long iterations = 0;
    double residual = 0.0;
    LimitStatus status = LimitStatus::MaxIter;
};

/// Iterates z -> M^q z until ||z_{k+1} - z_k||_inf <= tol (1 + ||z_k||_inf).
LimitResult limit_point(const Matrix& m, std::span<const double> x, unsigned long long q,
                        const LimitOptions& opts = {});
LimitResult limit_point(const MatrixCollection& collection, const Word& word, std::span<const double> x,
                        unsigned long long q, const LimitOptions& opts = {});

/// sum_{s < kappa} alpha_s v_s.
Vector spectral_limit(const CommonEigenSystem& system, const LCCoefficients& coeffs);
/// Word-aware variant: keeps every s whose word eigenvalue prod_r lambda_{s,r}^{count_r}
/// has modulus one, which matters for words that skip letters.
Vector spectral_limit(const CommonEigenSystem& system, const LCCoefficients& coeffs, const Word& word,
                      std::size_t n_letters, double modulus_tol = 1e-8);

/// Smallest divisor d of q with ||M^d xi - xi||_inf <= tol (1 + ||xi||_inf).
/// Throws NotPeriodic when d = q fails too.
unsigned long long point_period(const Matrix& m, std::span<const double> xi, unsigned long long q, double tol = 1e-8);

/// Smallest divisor d of q with A_r^d xi = xi for every r. Throws NotPeriodic.
unsigned long long common_period(const MatrixCollection& collection, std::span<const double> xi, unsigned long long q,
                                 double tol = 1e-8);

/// State of the skew product on (shift position, vector).
struct SkewState {
    std::size_t shift = 0;
    Vector x;
};

/// (tau, x) -> (sigma tau, A_{tau_1} x); the caller supplies tau_1.
SkewState skew_product_step(const MatrixCollection& collection, Letter head, const SkewState& state);

} // namespace nnprod
