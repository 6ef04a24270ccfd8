#pragma once

#include <nnprod/error.hpp>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace nnprod {

using Complex = std::complex<double>;
using Vector = std::vector<double>;
using CVector = std::vector<Complex>;

template <typename T>
inline constexpr bool is_complex_v = false;
template <typename T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

/// Dense row-major matrix. Square in every public contract that talks about
/// "matrices"; rectangular shapes appear internally for subspace bases and
/// stacked commutators.
template <typename T>
class Dense {
public:
    using value_type = T;

    Dense() = default;
    Dense(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
    Dense(std::size_t rows, std::size_t cols, std::vector<T> data);
    Dense(std::initializer_list<std::initializer_list<T>> rows);

    static Dense identity(std::size_t n);
    static Dense zero(std::size_t n) { return Dense(n, n); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const T> data() const noexcept { return data_; }
    std::span<T> data() noexcept { return data_; }

    std::vector<T> col(std::size_t j) const;
    void set_col(std::size_t j, std::span<const T> v);

    bool operator==(const Dense&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = Dense<double>;
using ComplexMatrix = Dense<Complex>;

/// Exact rational input entry, kept in lowest terms with a positive denominator.
struct RationalEntry {
    long long numerator = 0;
    long long denominator = 1;

    static RationalEntry make(long long num, long long den);
    double to_double() const noexcept;
};

/// Parses "p/q", a decimal literal, or an integer. Rationals are converted once
/// to the nearest double.
double parse_entry(std::string_view text);
std::optional<RationalEntry> parse_rational(std::string_view text);

// Arithmetic. Summation order is ascending in the contracted index everywhere.

template <typename T>
Dense<T> mat_mul(const Dense<T>& a, const Dense<T>& b);
template <typename T>
std::vector<T> mat_vec(const Dense<T>& a, std::span<const T> x);
template <typename T>
Dense<T> add(const Dense<T>& a, const Dense<T>& b);
template <typename T>
Dense<T> sub(const Dense<T>& a, const Dense<T>& b);
template <typename T>
Dense<T> scale(const Dense<T>& a, T s);
template <typename T>
Dense<T> adjoint(const Dense<T>& a);
template <typename T>
Dense<T> matrix_power(const Dense<T>& a, unsigned long long k);
/// Vertical concatenation.
template <typename T>
Dense<T> vstack(std::span<const Dense<T>> blocks);

ComplexMatrix to_complex(const Matrix& a);
CVector to_complex(std::span<const double> x);
Matrix real_part(const ComplexMatrix& a);
Vector real_part(std::span<const Complex> x);

/// Largest absolute entry.
template <typename T>
double max_abs(const Dense<T>& a) noexcept;
template <typename T>
double norm_inf(std::span<const T> x) noexcept;
template <typename T>
double norm2(std::span<const T> x) noexcept;

bool is_nonnegative(const Matrix& a) noexcept;
bool is_finite(const Matrix& a) noexcept;

/// Thin singular value decomposition by one-sided (Hestenes) Jacobi.
/// `a * right == left * diag(singular)` with `right` unitary (cols x cols)
/// and singular values in descending order.
template <typename T>
struct Svd {
    std::vector<double> singular;
    Dense<T> left;
    Dense<T> right;
};

template <typename T>
Svd<T> svd(const Dense<T>& a);

/// Largest singular value.
double operator_norm(const Matrix& a);
double operator_norm(const ComplexMatrix& a);

template <typename T>
struct RankNullspace {
    std::size_t rank = 0;
    /// cols x (cols - rank), orthonormal columns.
    Dense<T> nullspace;
    double tol = 0.0;
};

/// Numerical rank and an orthonormal basis of the kernel. Without an explicit
/// tolerance the threshold is max(rows, cols) * sigma_max * eps.
template <typename T>
RankNullspace<T> rank_and_nullspace(const Dense<T>& m, std::optional<double> tol = std::nullopt);

/// Scales the vector to unit 2-norm and rotates it so that its first entry of
/// (numerically) largest modulus is real and positive.
CVector phase_canonicalize(CVector v);

std::string to_string(const Matrix& a);

} // namespace nnprod

#include <nnprod/detail/numeric_impl.hpp>
