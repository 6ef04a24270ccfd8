#include <nnprod/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace nnprod {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Parlett-Reinsch balancing with radix 2, so the scaling is exact.
void balance(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    bool done = false;
    for (int pass = 0; !done && pass < 100; ++pass) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs1(a(j, i));
                r += abs1(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / 2.0;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while (c > g) {
                f /= 2.0;
                c /= 4.0;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double inv = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

void reduce_to_hessenberg(ComplexMatrix& h) {
    const std::size_t n = h.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const Complex x0 = h(k + 1, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;
        CVector v(n - k - 1);
        for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
        v[0] -= alpha;
        const double vnorm = norm2<Complex>(v);
        if (vnorm == 0.0) continue;
        for (auto& e : v) e /= vnorm;
        // H <- (I - 2 v v^H) H
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i - k - 1]) * h(i, j);
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i - k - 1] * dot;
        }
        // H <- H (I - 2 v v^H)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j - k - 1];
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * dot * std::conj(v[j - k - 1]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
    }
}

struct Givens {
    double c = 1.0;
    Complex s{};
};

// G = [[c, s], [-conj(s), c]] with G * [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
    const double ay = std::abs(y);
    if (ay == 0.0) return {};
    const double ax = std::abs(x);
    if (ax == 0.0) return {0.0, Complex(1.0, 0.0)};
    const double r = std::hypot(ax, ay);
    return {ax / r, (x / ax) * std::conj(y) / r};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex p = 0.5 * (a - d);
    const Complex bc = b * c;
    const Complex disc = std::sqrt(p * p + bc);
    const Complex den1 = p + disc;
    const Complex den2 = p - disc;
    const Complex den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
    if (std::abs(den) == 0.0) return d;
    return d - bc / den;
}

} // namespace

CVector qr_eigenvalues(const ComplexMatrix& a, int max_sweeps_per_eigenvalue) {
    if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "eigenvalues of a non-square matrix");
    const std::size_t n = a.rows();
    CVector values(n);
    if (n == 0) return values;
    ComplexMatrix h = a;
    balance(h);
    reduce_to_hessenberg(h);

    double hnorm = 0.0;
    for (const auto& z : h.data()) hnorm = std::max(hnorm, std::abs(z));

    std::size_t hi = n - 1;
    int sweeps = 0;
    while (true) {
        if (hi == 0) {
            values[0] = h(0, 0);
            break;
        }
        std::size_t l = hi;
        while (l > 0) {
            double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == 0.0) s = hnorm;
            if (std::abs(h(l, l - 1)) <= kEps * s || std::abs(h(l, l - 1)) < std::numeric_limits<double>::min()) {
                h(l, l - 1) = Complex{};
                break;
            }
            --l;
        }
        if (l == hi) {
            values[hi] = h(hi, hi);
            --hi;
            sweeps = 0;
            continue;
        }
        if (++sweeps > max_sweeps_per_eigenvalue) {
            throw Error(ErrorCode::ConvergenceFailure, "QR iteration did not converge");
        }

        Complex mu;
        if (sweeps % 10 == 0) {
            // Exceptional shift breaks cycles such as cyclic permutations.
            const double sub = std::abs(h(hi, hi - 1)) + (hi >= 2 ? std::abs(h(hi - 1, hi - 2)) : 0.0);
            mu = h(hi, hi) + Complex(0.75 * sub, 0.4375 * sub);
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }

        for (std::size_t k = l; k < hi; ++k) {
            Complex x;
            Complex y;
            if (k == l) {
                x = h(l, l) - mu;
                y = h(l + 1, l);
            } else {
                x = h(k, k - 1);
                y = h(k + 1, k - 1);
            }
            const Givens g = make_givens(x, y);
            const std::size_t jstart = k == l ? l : k - 1;
            for (std::size_t j = jstart; j <= hi; ++j) {
                const Complex u = h(k, j);
                const Complex w = h(k + 1, j);
                h(k, j) = g.c * u + g.s * w;
                h(k + 1, j) = -std::conj(g.s) * u + g.c * w;
            }
            if (k > l) h(k + 1, k - 1) = Complex{};
            const std::size_t iend = std::min(k + 2, hi);
            for (std::size_t i = l; i <= iend; ++i) {
                const Complex u = h(i, k);
                const Complex w = h(i, k + 1);
                h(i, k) = u * g.c + w * std::conj(g.s);
                h(i, k + 1) = -u * g.s + w * g.c;
            }
        }
    }
    return values;
}

namespace {

double arg_0_2pi(Complex z) {
    if (z.imag() == 0.0) return z.real() >= 0.0 ? 0.0 : std::numbers::pi;
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

// Moduli are compared on a grid of width `tol` so rounding noise does not
// reorder eigenvalues of equal modulus.
bool spectral_less(Complex x, Complex y, double tol) {
    const auto mx = std::llround(std::abs(x) / tol);
    const auto my = std::llround(std::abs(y) / tol);
    if (mx != my) return mx > my;
    return arg_0_2pi(x) < arg_0_2pi(y);
}

struct Cluster {
    Complex value;
    std::size_t size = 0;
};

std::vector<Cluster> cluster_eigenvalues(const CVector& raw, double tol, bool real_input) {
    const std::size_t n = raw.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(raw[i] - raw[j]) <= tol) parent[find(i)] = find(j);
        }
    }
    std::vector<Cluster> clusters;
    std::vector<std::size_t> root_index(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (root_index[r] == n) {
            root_index[r] = clusters.size();
            clusters.push_back({});
        }
        Cluster& c = clusters[root_index[r]];
        c.value += raw[i];
        ++c.size;
    }
    for (auto& c : clusters) c.value /= static_cast<double>(c.size);

    if (real_input) {
        // Real spectra are conjugate-closed: snap near-real values onto the axis
        // and make partners exact conjugates of each other.
        for (auto& c : clusters) {
            if (std::abs(c.value.imag()) <= tol) c.value = Complex(c.value.real(), 0.0);
        }
        std::vector<bool> matched(clusters.size(), false);
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (matched[i] || clusters[i].value.imag() <= 0.0) continue;
            std::size_t best = clusters.size();
            double best_d = tol * 4.0;
            for (std::size_t j = 0; j < clusters.size(); ++j) {
                if (matched[j] || j == i || clusters[j].value.imag() >= 0.0) continue;
                const double d = std::abs(clusters[j].value - std::conj(clusters[i].value));
                if (d <= best_d && clusters[j].size == clusters[i].size) {
                    best_d = d;
                    best = j;
                }
            }
            if (best == clusters.size()) continue;
            const Complex avg = 0.5 * (clusters[i].value + std::conj(clusters[best].value));
            clusters[i].value = avg;
            clusters[best].value = std::conj(avg);
            matched[i] = matched[best] = true;
        }
    }
    std::stable_sort(clusters.begin(), clusters.end(),
                     [tol](const Cluster& x, const Cluster& y) { return spectral_less(x.value, y.value, tol); });
    return clusters;
}

template <typename T>
Dense<T> shifted(const Dense<T>& a, T lambda) {
    Dense<T> m = a;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= lambda;
    return m;
}

template <typename T>
double residual_of(const Dense<T>& a, Complex lambda, const CVector& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t k = 0; k < a.cols(); ++k) s += Complex(a(i, k)) * v[k];
        acc += std::norm(s - lambda * v[i]);
    }
    return std::sqrt(acc);
}

// Orthonormal basis of ker(A - lambda I); never empty for a computed eigenvalue.
template <typename T>
std::vector<CVector> eigenspace(const Dense<T>& a, T lambda, double tol) {
    const Dense<T> m = shifted(a, lambda);
    auto rn = rank_and_nullspace(m, tol);
    std::vector<CVector> basis;
    if (rn.nullspace.cols() == 0) {
        // The eigenvalue estimate sits just outside the threshold: use the
        // smallest right singular vector.
        const auto s = svd(m);
        std::vector<T> v = s.right.col(s.right.cols() - 1);
        basis.emplace_back(v.begin(), v.end());
        return basis;
    }
    for (std::size_t j = 0; j < rn.nullspace.cols(); ++j) {
        std::vector<T> v = rn.nullspace.col(j);
        basis.emplace_back(v.begin(), v.end());
    }
    return basis;
}

template <typename T>
EigenDecomposition decompose(const Dense<T>& a, const SpectralOptions& opts) {
    if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "eigendecompose: matrix is not square");
    constexpr bool real_input = !is_complex_v<T>;
    ComplexMatrix ac;
    if constexpr (real_input) {
        ac = to_complex(a);
    } else {
        ac = a;
    }
    const CVector raw = qr_eigenvalues(ac, opts.max_sweeps_per_eigenvalue);
    double rho = 0.0;
    for (const auto& z : raw) rho = std::max(rho, std::abs(z));

    EigenDecomposition out;
    out.cluster_tol = opts.cluster_rel * std::max(1.0, rho);
    const auto clusters = cluster_eigenvalues(raw, out.cluster_tol, real_input);
    const double vtol = opts.vector_rel * std::max(1.0, a.rows() == 0 ? 0.0 : operator_norm(a));

    std::vector<std::vector<CVector>> spaces(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const Complex lambda = clusters[c].value;
        if constexpr (real_input) {
            if (lambda.imag() == 0.0) {
                spaces[c] = eigenspace<double>(a, lambda.real(), vtol);
            } else if (lambda.imag() < 0.0) {
                // Conjugate partner of an earlier cluster: conjugate its vectors.
                const auto partner = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& k) {
                    return k.value == std::conj(lambda) && k.size == clusters[c].size;
                });
                if (partner != clusters.end()) {
                    const auto idx = static_cast<std::size_t>(partner - clusters.begin());
                    for (const auto& v : spaces[idx]) {
                        CVector w(v.size());
                        for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::conj(v[i]);
                        spaces[c].push_back(std::move(w));
                    }
                } else {
                    spaces[c] = eigenspace<Complex>(to_complex(a), lambda, vtol);
                }
            } else {
                spaces[c] = eigenspace<Complex>(to_complex(a), lambda, vtol);
            }
        } else {
            spaces[c] = eigenspace<Complex>(a, lambda, vtol);
        }
    }

    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t k = 0; k < clusters[c].size; ++k) out.eigenvalues.push_back(clusters[c].value);
        const std::size_t geometric = std::min(spaces[c].size(), clusters[c].size);
        for (std::size_t k = 0; k < geometric; ++k) {
            EigenPair p;
            p.eigenvalue = clusters[c].value;
            p.eigenvector = phase_canonicalize(spaces[c][k]);
            p.residual = residual_of(a, p.eigenvalue, p.eigenvector);
            p.algebraic_multiplicity = clusters[c].size;
            p.geometric_multiplicity = geometric;
            out.pairs.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace

bool EigenDecomposition::defective() const noexcept {
    return std::any_of(pairs.begin(), pairs.end(), [](const EigenPair& p) { return p.deficient(); });
}

double EigenDecomposition::spectral_radius() const noexcept {
    double rho = 0.0;
    for (const auto& z : eigenvalues) rho = std::max(rho, std::abs(z));
    return rho;
}

EigenDecomposition eigendecompose(const Matrix& a, const SpectralOptions& opts) { return decompose(a, opts); }

EigenDecomposition eigendecompose(const ComplexMatrix& a, const SpectralOptions& opts) {
    return decompose(a, opts);
}

double spectral_radius(const Matrix& a) {
    double rho = 0.0;
    for (const auto& z : qr_eigenvalues(to_complex(a))) rho = std::max(rho, std::abs(z));
    return rho;
}

std::optional<unsigned> root_of_unity_order(Complex lambda, unsigned max_order, double tol) {
    Complex p = lambda;
    for (unsigned d = 1; d <= max_order; ++d) {
        if (std::abs(p - 1.0) <= tol) return d;
        p *= lambda;
    }
    return std::nullopt;
}

PeripheralReport peripheral_period(const Matrix& a, const PeripheralOptions& opts) {
    const EigenDecomposition ed = eigendecompose(a, opts.spectral);
    PeripheralReport report;
    report.rho = ed.spectral_radius();
    const double tol = ed.cluster_tol;
    for (const auto& z : ed.eigenvalues) {
        if (std::abs(std::abs(z) - report.rho) <= tol) report.values.push_back(z);
    }
    for (const auto& p : ed.pairs) {
        if (std::abs(std::abs(p.eigenvalue) - report.rho) <= tol) report.pairs.push_back(p);
    }
    report.orders.assign(report.values.size(), std::nullopt);
    if (std::abs(report.rho - 1.0) > opts.rho_tol) return report;

    const auto max_order = static_cast<unsigned>(std::max<std::size_t>(a.rows(), 1));
    unsigned long long q = 1;
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        report.orders[i] = root_of_unity_order(report.values[i], max_order, opts.root_tol);
        if (!report.orders[i]) {
            throw Error(ErrorCode::NotRootOfUnity, "peripheral eigenvalue has no root-of-unity order <= n");
        }
        q = std::lcm(q, static_cast<unsigned long long>(*report.orders[i]));
    }
    report.period = q;
    return report;
}

bool is_irreducible(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n <= 1) return true;
    auto reaches_all = [&](bool reverse) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                const double w = reverse ? a(j, i) : a(i, j);
                if (w != 0.0 && !seen[j]) {
                    seen[j] = true;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == n;
    };
    return reaches_all(false) && reaches_all(true);
}

unsigned index_of_imprimitivity(const Matrix& a, const SpectralOptions& opts) {
    if (!is_irreducible(a)) throw Error(ErrorCode::Reducible, "matrix is reducible");
    const EigenDecomposition ed = eigendecompose(a, opts);
    const double rho = ed.spectral_radius();
    unsigned count = 0;
    for (const auto& z : ed.eigenvalues) {
        if (std::abs(std::abs(z) - rho) <= ed.cluster_tol) ++count;
    }
    return count;
}

} // namespace nnprod
