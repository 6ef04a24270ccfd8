#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerics: products are naive long-double loops, eigenvalues
// come from the characteristic polynomial, limits from plain iteration.

#include <nnprod/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Real = long double;
using C = std::complex<long double>;
using RMat = std::vector<std::vector<Real>>;

inline RMat from(const nnprod::Matrix& m) {
    RMat out(m.rows(), std::vector<Real>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    }
    return out;
}

inline RMat mul(const RMat& a, const RMat& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.front().size();
    RMat out(n, std::vector<Real>(m, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    }
    return out;
}

inline std::vector<Real> apply(const RMat& a, const std::vector<Real>& x) {
    std::vector<Real> y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
}

inline std::vector<Real> widen(const std::vector<double>& x) { return {x.begin(), x.end()}; }

inline std::vector<double> narrow(const std::vector<Real>& x) {
    std::vector<double> out;
    for (Real v : x) out.push_back(static_cast<double>(v));
    return out;
}

inline double dist_inf(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline double norm_inf(const std::vector<double>& a) {
    double d = 0;
    for (double v : a) d = std::max(d, std::abs(v));
    return d;
}

// A_{w_p} ... A_{w_1}, built left to right from the word.
inline RMat word_matrix(const std::vector<nnprod::Matrix>& ms, const std::vector<std::size_t>& word) {
    const std::size_t n = ms.front().rows();
    RMat p(n, std::vector<Real>(n, 0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    for (std::size_t r : word) p = mul(from(ms[r]), p);
    return p;
}

// Characteristic polynomial by Faddeev-LeVerrier, coefficients c[0..n] of
// det(tI - A) = sum c_k t^(n-k).
inline std::vector<Real> charpoly(const RMat& a) {
    const std::size_t n = a.size();
    std::vector<Real> c(n + 1, 0);
    c[0] = 1;
    RMat m(n, std::vector<Real>(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{k-1} I
        RMat am = mul(a, m);
        for (std::size_t i = 0; i < n; ++i) am[i][i] += c[k - 1];
        m = am;
        const RMat amk = mul(a, m);
        Real tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += amk[i][i];
        c[k] = -tr / static_cast<Real>(k);
    }
    return c;
}

// Durand-Kerner roots of a monic polynomial, then Newton polish.
inline std::vector<C> poly_roots(const std::vector<Real>& c) {
    const std::size_t n = c.size() - 1;
    auto eval = [&](C z) {
        C v = 1;
        for (std::size_t k = 1; k <= n; ++k) v = v * z + C(c[k]);
        return v;
    };
    auto deriv = [&](C z) {
        C v = 0;
        for (std::size_t k = 0; k < n; ++k) v = v * z + C(c[k] * static_cast<Real>(n - k));
        return v;
    };
    std::vector<C> z(n);
    const C seed(0.4L, 0.9L);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<int>(i));
    for (int it = 0; it < 5000; ++it) {
        Real move = 0;
        for (std::size_t i = 0; i < n; ++i) {
            C den = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) den *= z[i] - z[j];
            }
            if (std::abs(den) == 0) den = C(1e-30L);
            const C step = eval(z[i]) / den;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-30L) break;
    }
    for (auto& r : z) {
        for (int it = 0; it < 5; ++it) {
            const C d = deriv(r);
            if (std::abs(d) < 1e-12L) break;
            r -= eval(r) / d;
        }
    }
    return z;
}

inline std::vector<C> eigenvalues(const nnprod::Matrix& a) { return poly_roots(charpoly(from(a))); }

// Greedy multiset match: every expected value consumes its nearest root.
inline double multiset_distance(std::vector<C> got, const std::vector<C>& expected) {
    if (got.size() != expected.size()) return INFINITY;
    double worst = 0;
    for (const auto& e : expected) {
        auto it = std::min_element(got.begin(), got.end(),
                                   [&](const C& x, const C& y) { return std::abs(x - e) < std::abs(y - e); });
        worst = std::max(worst, static_cast<double>(std::abs(*it - e)));
        got.erase(it);
    }
    return worst;
}

inline double spectral_radius(const nnprod::Matrix& a) {
    double r = 0;
    for (const auto& z : eigenvalues(a)) r = std::max(r, static_cast<double>(std::abs(z)));
    return r;
}

// x, M x, M^2 x, ... until consecutive M^q blocks agree; returns the last block.
struct Iterated {
    std::vector<double> xi;
    bool converged = false;
};

inline Iterated iterate_limit(const RMat& m, const std::vector<double>& x, unsigned q, std::size_t max_blocks = 200000,
                              double tol = 1e-13) {
    std::vector<Real> z = widen(x);
    for (std::size_t k = 0; k < max_blocks; ++k) {
        std::vector<Real> next = z;
        for (unsigned i = 0; i < q; ++i) next = oracle::apply(m, next);
        Real diff = 0, scale = 1;
        for (std::size_t i = 0; i < z.size(); ++i) {
            diff = std::max(diff, std::abs(next[i] - z[i]));
            scale = std::max(scale, std::abs(z[i]));
        }
        z = next;
        if (diff <= tol * scale) return {narrow(z), true};
    }
    return {narrow(z), false};
}

// Smallest d >= 1 with M^d x = x, searched up to max_d by repeated application.
inline unsigned brute_period(const RMat& m, const std::vector<double>& x, unsigned max_d, double tol = 1e-8) {
    std::vector<Real> z = widen(x);
    const double scale = 1 + norm_inf(x);
    for (unsigned d = 1; d <= max_d; ++d) {
        z = oracle::apply(m, z);
        if (dist_inf(narrow(z), x) <= tol * scale) return d;
    }
    return 0;
}

// Complex least squares min ||V a - x|| via normal equations and Gaussian
// elimination with partial pivoting. Returns the residual 2-norm.
inline double least_squares_residual(const std::vector<std::vector<std::complex<double>>>& cols,
                                     const std::vector<double>& x) {
    const std::size_t k = cols.size(), n = x.size();
    std::vector<std::vector<C>> g(k, std::vector<C>(k + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t t = 0; t < n; ++t) g[i][j] += std::conj(C(cols[i][t])) * C(cols[j][t]);
        }
        for (std::size_t t = 0; t < n; ++t) g[i][k] += std::conj(C(cols[i][t])) * C(x[t]);
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < k; ++r) {
            if (std::abs(g[r][c]) > std::abs(g[p][c])) p = r;
        }
        std::swap(g[c], g[p]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || std::abs(g[c][c]) == 0) continue;
            const C f = g[r][c] / g[c][c];
            for (std::size_t j = c; j <= k; ++j) g[r][j] -= f * g[c][j];
        }
    }
    std::vector<C> a(k);
    for (std::size_t c = 0; c < k; ++c) a[c] = g[c][c] == C(0) ? C(0) : g[c][k] / g[c][c];
    Real res = 0;
    for (std::size_t t = 0; t < n; ++t) {
        C v = C(x[t]);
        for (std::size_t c = 0; c < k; ++c) v -= a[c] * C(cols[c][t]);
        res += std::norm(v);
    }
    return static_cast<double>(std::sqrt(res));
}

// Rank by Gaussian elimination with a relative pivot threshold.
inline std::size_t rank(RMat a, Real rel = 1e-9L) {
    const std::size_t n = a.size(), m = a.front().size();
    Real scale = 0;
    for (const auto& r : a) {
        for (Real v : r) scale = std::max(scale, std::abs(v));
    }
    std::size_t rk = 0;
    for (std::size_t c = 0; c < m && rk < n; ++c) {
        std::size_t p = rk;
        for (std::size_t r = rk + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        if (std::abs(a[p][c]) <= rel * std::max<Real>(scale, 1)) continue;
        std::swap(a[rk], a[p]);
        for (std::size_t r = rk + 1; r < n; ++r) {
            const Real f = a[r][c] / a[rk][c];
            for (std::size_t j = c; j < m; ++j) a[r][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

// Exact rational arithmetic on small integer-valued matrices.
struct Rat {
    long long p = 0, q = 1;
    Rat() = default;
    Rat(long long a, long long b = 1) : p(a), q(b) { norm(); }
    void norm() {
        if (q < 0) p = -p, q = -q;
        const long long g = std::gcd(p < 0 ? -p : p, q);
        if (g > 1) p /= g, q /= g;
    }
    Rat operator+(const Rat& o) const { return Rat(p * o.q + o.p * q, q * o.q); }
    Rat operator*(const Rat& o) const { return Rat(p * o.p, q * o.q); }
    bool operator==(const Rat& o) const { return p == o.p && q == o.q; }
};

using QMat = std::vector<std::vector<Rat>>;

inline std::vector<Rat> apply(const QMat& a, const std::vector<Rat>& x) {
    std::vector<Rat> y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] = y[i] + a[i][j] * x[j];
    }
    return y;
}

// Seeded source for randomized cases; seeds are printed by the suites.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine); }
};

} // namespace oracle
