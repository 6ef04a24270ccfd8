#pragma once

#include <nnprod/word_dynamics.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nnprod {

/// Deterministic letter source: eventually periodic (prefix + repeated cycle)
/// or a seeded pseudo-random stream where letter k depends only on (seed, k).
class InfiniteWord {
public:
    static InfiniteWord periodic(std::vector<Letter> prefix, std::vector<Letter> cycle, std::size_t n_letters);
    static InfiniteWord seeded(std::uint64_t seed, std::size_t n_letters);

    /// Letter k, zero-based.
    Letter at(std::size_t k) const;
    std::size_t alphabet_size() const noexcept { return n_letters_; }
    bool is_periodic() const noexcept { return !seeded_; }
    const std::vector<Letter>& prefix_part() const noexcept { return prefix_; }
    const std::vector<Letter>& cycle_part() const noexcept { return cycle_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// tau^{[p]}.
    Word prefix(std::size_t p) const;
    /// Phi_{tau,r}(p) for every r.
    std::vector<std::size_t> phi(std::size_t p) const;
    /// First p by which every letter has appeared. Throws InvalidInput when
    /// no such p exists (or none within `cap` for seeded words).
    std::size_t coverage_time(std::size_t cap = 1000000) const;

private:
    InfiniteWord() = default;

    std::vector<Letter> prefix_;
    std::vector<Letter> cycle_;
    bool seeded_ = false;
    std::uint64_t seed_ = 0;
    std::size_t n_letters_ = 0;
};

/// "periodic:AB", "periodic:A(AB)" (prefix then cycle) or "seed:42".
InfiniteWord parse_infinite_word(const MatrixCollection& collection, std::string_view spec);
std::string describe(const MatrixCollection& collection, const InfiniteWord& tau);

struct OrbitTuple {
    std::vector<Vector> components;
};

/// (xi, A_w xi, ..., A_w^{q-1} xi). Throws ConvergenceFailure when the limit
/// does not converge.
OrbitTuple a_tilde(const Matrix& word_matrix, unsigned long long q, std::span<const double> x,
                   const LimitOptions& opts = {});
OrbitTuple a_tilde(const MatrixCollection& collection, const Word& word, unsigned long long q,
                   std::span<const double> x, const LimitOptions& opts = {});

struct Q2Options {
    LimitOptions limit{};
    PeriodOptions period{};
    StructureOptions structure{};
    /// Defaults to min(q^kappa + 1, 100000).
    std::optional<std::size_t> budget;
    double tuple_rel = 1e-8;
    double lambda_tol = 1e-8;
};

struct Q2Certificate {
    std::size_t m = 0;
    unsigned long long q = 1;
    std::size_t kappa = 0;
    std::size_t budget = 0;
    std::vector<std::size_t> p_gammas;
    /// lambdas[r][j] in [0, q), j < kappa.
    std::vector<std::vector<long long>> lambdas;
    /// phi[k][r] = Phi_{tau,r}(p_gammas[k]).
    std::vector<std::vector<std::size_t>> phi;
    /// residues[k][j] = sum_r lambdas[r][j] (phi[k][r] - phi[0][r]) mod q.
    std::vector<std::vector<long long>> residues;
    Vector xi;
    OrbitTuple tuple;
};

/// Pigeonhole search for prefixes p >= m whose orbit tuples coincide.
/// Throws HypothesesNotMet (non-commuting, non-diagonalizable or divergent),
/// BudgetExhausted (no repeat) or NotRootOfUnity.
Q2Certificate q2_certificate(const MatrixCollection& collection, const InfiniteWord& tau, std::span<const double> x,
                             const Q2Options& opts = {});

/// First component of a_tilde(tau^{[p]}) equals xi_x for every p in [p_lo, p_hi].
/// Throws HypothesesNotMet when some orbit diverges.
bool tuple_first_component_stability(const MatrixCollection& collection, const InfiniteWord& tau,
                                     std::span<const double> x, std::size_t p_lo, std::size_t p_hi,
                                     const Q2Options& opts = {});

} // namespace nnprod
