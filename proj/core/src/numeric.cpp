#include <nnprod/numeric.hpp>

#include <charconv>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace nnprod {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidLetter: return "InvalidLetter";
    case ErrorCode::NotRootOfUnity: return "NotRootOfUnity";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::SpectralRadiusViolation: return "SpectralRadiusViolation";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    }
    return "Unknown";
}

RationalEntry RationalEntry::make(long long num, long long den) {
    if (den == 0) throw Error(ErrorCode::InvalidInput, "rational entry with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

double RationalEntry::to_double() const noexcept {
    // Both operands are exact for |values| < 2^53, so the quotient is correctly rounded.
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::optional<long long> parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

} // namespace

std::optional<RationalEntry> parse_rational(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto v = parse_integer(text);
        if (!v) return std::nullopt;
        return RationalEntry::make(*v, 1);
    }
    auto num = parse_integer(trim(text.substr(0, slash)));
    auto den = parse_integer(trim(text.substr(slash + 1)));
    if (!num || !den || *den == 0) return std::nullopt;
    return RationalEntry::make(*num, *den);
}

double parse_entry(std::string_view text) {
    const std::string_view t = trim(text);
    if (t.find('/') != std::string_view::npos) {
        auto r = parse_rational(t);
        if (!r) throw Error(ErrorCode::InvalidInput, "malformed rational entry '" + std::string(text) + "'");
        return r->to_double();
    }
    std::string_view s = t;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::InvalidInput, "malformed numeric entry '" + std::string(text) + "'");
    }
    return v;
}

ComplexMatrix to_complex(const Matrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i];
    return c;
}

CVector to_complex(std::span<const double> x) { return CVector(x.begin(), x.end()); }

Matrix real_part(const ComplexMatrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i].real();
    return c;
}

Vector real_part(std::span<const Complex> x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].real();
    return out;
}

bool is_nonnegative(const Matrix& a) noexcept {
    return std::all_of(a.data().begin(), a.data().end(), [](double v) { return v >= 0.0; });
}

bool is_finite(const Matrix& a) noexcept {
    return std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); });
}

namespace {

template <typename T>
T conj_of(T v) {
    if constexpr (is_complex_v<T>) {
        return std::conj(v);
    } else {
        return v;
    }
}

} // namespace

template <typename T>
Svd<T> svd(const Dense<T>& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Dense<T> g = a;
    Dense<T> v = Dense<T>::identity(n);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int kMaxSweeps = 80;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0;
                double beta = 0.0;
                T gamma{};
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += std::norm(g(k, i));
                    beta += std::norm(g(k, j));
                    gamma += conj_of(g(k, i)) * g(k, j);
                }
                const double mag = std::abs(gamma);
                if (mag == 0.0 || mag <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                // phase = gamma / |gamma|; rotate (g_i, conj(phase) g_j) by a real Jacobi angle.
                const T phase = gamma / mag;
                const double zeta = (beta - alpha) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const T pc = conj_of(phase);
                for (std::size_t k = 0; k < m; ++k) {
                    const T gi = g(k, i);
                    const T gj = pc * g(k, j);
                    g(k, i) = c * gi - s * gj;
                    g(k, j) = s * gi + c * gj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T vi = v(k, i);
                    const T vj = pc * v(k, j);
                    v(k, i) = c * vi - s * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += std::norm(g(k, j));
        sigma[j] = std::sqrt(acc);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd<T> out;
    out.singular.resize(n);
    out.left = Dense<T>(m, n);
    out.right = Dense<T>(n, n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        out.singular[jj] = sigma[j];
        for (std::size_t k = 0; k < n; ++k) out.right(k, jj) = v(k, j);
        if (sigma[j] > 0.0) {
            for (std::size_t k = 0; k < m; ++k) out.left(k, jj) = g(k, j) / sigma[j];
        }
    }
    return out;
}

template Svd<double> svd(const Dense<double>&);
template Svd<Complex> svd(const Dense<Complex>&);

double operator_norm(const Matrix& a) {
    if (a.empty()) return 0.0;
    return svd(a).singular.front();
}

double operator_norm(const ComplexMatrix& a) {
    if (a.empty()) return 0.0;
    return svd(a).singular.front();
}

template <typename T>
RankNullspace<T> rank_and_nullspace(const Dense<T>& m, std::optional<double> tol) {
    RankNullspace<T> out;
    const std::size_t n = m.cols();
    if (n == 0) return out;
    if (m.rows() == 0) {
        out.nullspace = Dense<T>::identity(n);
        return out;
    }
    const Svd<T> s = svd(m);
    const double smax = s.singular.front();
    const double threshold =
        tol ? *tol : static_cast<double>(std::max(m.rows(), n)) * smax * std::numeric_limits<double>::epsilon();
    out.tol = threshold;
    std::size_t rank = 0;
    for (double sv : s.singular) {
        if (sv > threshold) ++rank;
    }
    out.rank = rank;
    out.nullspace = Dense<T>(n, n - rank);
    for (std::size_t j = rank; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) out.nullspace(k, j - rank) = s.right(k, j);
    }
    return out;
}

template RankNullspace<double> rank_and_nullspace(const Dense<double>&, std::optional<double>);
template RankNullspace<Complex> rank_and_nullspace(const Dense<Complex>&, std::optional<double>);

CVector phase_canonicalize(CVector v) {
    const double nrm = norm2<Complex>(v);
    if (nrm == 0.0) return v;
    double biggest = 0.0;
    for (auto& x : v) {
        x /= nrm;
        biggest = std::max(biggest, std::abs(x));
    }
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) >= (1.0 - 1e-9) * biggest) {
            pivot = i;
            break;
        }
    }
    const Complex rot = std::conj(v[pivot]) / std::abs(v[pivot]);
    for (auto& x : v) x *= rot;
    v[pivot] = Complex(std::abs(v[pivot]), 0.0);
    return v;
}

std::string to_string(const Matrix& a) {
    std::ostringstream os;
    char buf[64];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << '[';
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%s%.6g", j == 0 ? "" : ", ", a(i, j));
            os << buf;
        }
        os << "]\n";
    }
    return os.str();
}

} // namespace nnprod
