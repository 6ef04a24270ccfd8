#include <nnprod/word_dynamics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nnprod {

bool Word::covers_all(std::size_t n_letters) const { return alphabet().size() == n_letters; }

std::vector<Letter> Word::alphabet() const {
    std::vector<Letter> out = letters;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> Word::counts(std::size_t n_letters) const {
    std::vector<std::size_t> c(n_letters, 0);
    for (Letter l : letters) {
        if (l < n_letters) ++c[l];
    }
    return c;
}

Word parse_word(const MatrixCollection& collection, std::string_view text) {
    Word w;
    const auto& names = collection.names();
    auto fail = [&](std::string_view bad) {
        throw Error(ErrorCode::InvalidLetter, "unknown letter '" + std::string(bad) + "' in word '" + std::string(text) + "'");
    };
    if (text.find_first_of(" ,") != std::string_view::npos) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
            std::size_t j = i;
            while (j < text.size() && text[j] != ' ' && text[j] != ',') ++j;
            if (j > i) {
                const std::string tok(text.substr(i, j - i));
                const auto idx = collection.index_of(tok);
                if (!idx) fail(tok);
                w.letters.push_back(*idx);
            }
            i = j;
        }
    } else {
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t best_len = 0;
            Letter best = 0;
            for (Letter r = 0; r < names.size(); ++r) {
                const auto& nm = names[r];
                if (nm.size() > best_len && text.substr(i, nm.size()) == nm) {
                    best_len = nm.size();
                    best = r;
                }
            }
            if (best_len == 0) fail(text.substr(i, 1));
            w.letters.push_back(best);
            i += best_len;
        }
    }
    if (w.letters.empty()) throw Error(ErrorCode::InvalidInput, "empty word");
    return w;
}

std::string word_to_string(const MatrixCollection& collection, const Word& word) {
    bool single = std::all_of(collection.names().begin(), collection.names().end(),
                              [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < word.letters.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += collection.names().at(word.letters[i]);
    }
    return out;
}

std::string factor_order(const MatrixCollection& collection, const Word& word) {
    std::string out;
    for (std::size_t i = word.letters.size(); i-- > 0;) {
        out += collection.names().at(word.letters[i]);
        if (i > 0) out += '*';
    }
    return out;
}

namespace {

void check_letters(const MatrixCollection& collection, const Word& word) {
    if (word.letters.empty()) throw Error(ErrorCode::InvalidInput, "empty word");
    for (Letter l : word.letters) {
        if (l >= collection.size()) {
            throw Error(ErrorCode::InvalidLetter, "letter " + std::to_string(l + 1) + " outside 1.." +
                                                      std::to_string(collection.size()));
        }
    }
}

double inf_norm(std::span<const double> x) { return norm_inf<double>(x); }

} // namespace

Matrix word_product(const MatrixCollection& collection, const Word& word) {
    check_letters(collection, word);
    Matrix p = collection[word.letters.front()];
    for (std::size_t i = 1; i < word.letters.size(); ++i) p = mat_mul(collection[word.letters[i]], p);
    return p;
}

namespace {

PeriodCertificate period_over(const MatrixCollection& collection, const std::vector<Letter>& letters,
                              const PeriodOptions& opts) {
    PeriodCertificate cert;
    cert.letters = letters;
    for (Letter r : letters) {
        const PeripheralReport rep = peripheral_period(collection[r], opts.peripheral);
        if (rep.rho > 1.0 + opts.rho_tol) {
            throw Error(ErrorCode::SpectralRadiusViolation,
                        "spectral radius of '" + collection.names()[r] + "' exceeds 1");
        }
        unsigned long long qr = 1;
        if (rep.rho >= 1.0 - opts.rho_tol) {
            if (!rep.period) {
                throw Error(ErrorCode::NotRootOfUnity,
                            "peripheral eigenvalue of '" + collection.names()[r] + "' is not a root of unity");
            }
            qr = *rep.period;
        }
        cert.q_r.push_back(qr);
        cert.q = std::lcm(cert.q, qr);
    }
    return cert;
}

} // namespace

PeriodCertificate global_period(const MatrixCollection& collection, const PeriodOptions& opts) {
    std::vector<Letter> all(collection.size());
    std::iota(all.begin(), all.end(), Letter{0});
    return period_over(collection, all, opts);
}

PeriodCertificate word_period(const MatrixCollection& collection, const Word& word, const PeriodOptions& opts) {
    check_letters(collection, word);
    return period_over(collection, word.alphabet(), opts);
}

OrbitBound orbit_bounded(const MatrixCollection& collection, const Word& word, std::span<const double> x,
                         std::size_t horizon, double bound) {
    const Matrix m = word_product(collection, word);
    if (x.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "orbit_bounded: vector length differs");
    OrbitBound out;
    Vector z(x.begin(), x.end());
    for (std::size_t k = 1; k <= horizon; ++k) {
        z = mat_vec<double>(m, z);
        out.last_norm = inf_norm(z);
        if (!(out.last_norm <= bound)) {
            out.bounded_so_far = false;
            out.exceeded_at = k;
            break;
        }
    }
    return out;
}

std::string_view to_string(LimitStatus status) noexcept {
    switch (status) {
    case LimitStatus::Converged: return "converged";
    case LimitStatus::Diverged: return "diverged";
    case LimitStatus::MaxIter: return "max_iter";
    }
    return "unknown";
}

LimitResult limit_point(const Matrix& m, std::span<const double> x, unsigned long long q, const LimitOptions& opts) {
    if (q == 0) throw Error(ErrorCode::InvalidInput, "limit_point: q must be positive");
    if (x.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "limit_point: vector length differs");
    const Matrix mq = matrix_power(m, q);
    LimitResult out;
    Vector z(x.begin(), x.end());
    for (unsigned long long k = 0; k < opts.max_iter; ++k) {
        Vector next = mat_vec<double>(mq, z);
        ++out.iterations;
        const double nz = inf_norm(next);
        if (!(nz <= opts.bound)) {
            out.status = LimitStatus::Diverged;
            out.xi = std::move(next);
            out.residual = std::numeric_limits<double>::infinity();
            return out;
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) diff = std::max(diff, std::abs(next[i] - z[i]));
        out.residual = diff;
        const bool done = diff <= opts.tol * (1.0 + inf_norm(z));
        z = std::move(next);
        if (done) {
            out.status = LimitStatus::Converged;
            break;
        }
    }
    out.xi = std::move(z);
    return out;
}

LimitResult limit_point(const MatrixCollection& collection, const Word& word, std::span<const double> x,
                        unsigned long long q, const LimitOptions& opts) {
    return limit_point(word_product(collection, word), x, q, opts);
}

namespace {

Vector combine(const CommonEigenSystem& system, const LCCoefficients& coeffs, const std::vector<bool>& keep) {
    const std::size_t n = system.dimension();
    Vector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::size_t s = 0; s < system.d(); ++s) {
            if (keep[s]) acc += coeffs.alphas.at(s) * system.vectors[s][i];
        }
        out[i] = acc.real();
    }
    return out;
}

} // namespace

Vector spectral_limit(const CommonEigenSystem& system, const LCCoefficients& coeffs) {
    std::vector<bool> keep(system.d(), false);
    for (std::size_t s = 0; s < system.kappa && s < keep.size(); ++s) keep[s] = true;
    return combine(system, coeffs, keep);
}

Vector spectral_limit(const CommonEigenSystem& system, const LCCoefficients& coeffs, const Word& word,
                      std::size_t n_letters, double modulus_tol) {
    const auto counts = word.counts(n_letters);
    std::vector<bool> keep(system.d(), false);
    for (std::size_t s = 0; s < system.d(); ++s) {
        double mod = 1.0;
        for (std::size_t r = 0; r < n_letters; ++r) {
            if (counts[r] > 0) mod *= std::pow(std::abs(system.lambda[s][r]), static_cast<double>(counts[r]));
        }
        keep[s] = std::abs(mod - 1.0) <= modulus_tol * static_cast<double>(word.length());
    }
    return combine(system, coeffs, keep);
}

namespace {

std::vector<unsigned long long> divisors(unsigned long long q) {
    std::vector<unsigned long long> out;
    for (unsigned long long d = 1; d <= q; ++d) {
        if (q % d == 0) out.push_back(d);
    }
    return out;
}

bool returns(const Matrix& m, std::span<const double> xi, unsigned long long d, double tol) {
    const Vector y = mat_vec<double>(matrix_power(m, d), xi);
    const double scale = tol * (1.0 + inf_norm(xi));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(std::abs(y[i] - xi[i]) <= scale)) return false;
    }
    return true;
}

} // namespace

unsigned long long point_period(const Matrix& m, std::span<const double> xi, unsigned long long q, double tol) {
    if (q == 0) throw Error(ErrorCode::InvalidInput, "point_period: q must be positive");
    if (xi.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "point_period: vector length differs");
    for (unsigned long long d : divisors(q)) {
        if (returns(m, xi, d, tol)) return d;
    }
    throw Error(ErrorCode::NotPeriodic, "point is not periodic with period dividing " + std::to_string(q));
}

unsigned long long common_period(const MatrixCollection& collection, std::span<const double> xi, unsigned long long q,
                                 double tol) {
    if (q == 0) throw Error(ErrorCode::InvalidInput, "common_period: q must be positive");
    for (unsigned long long d : divisors(q)) {
        bool all = true;
        for (const auto& m : collection.matrices()) all = all && returns(m, xi, d, tol);
        if (all) return d;
    }
    throw Error(ErrorCode::NotPeriodic, "point is not a common periodic point with period dividing " + std::to_string(q));
}

SkewState skew_product_step(const MatrixCollection& collection, Letter head, const SkewState& state) {
    if (head >= collection.size()) throw Error(ErrorCode::InvalidLetter, "skew_product_step: letter out of range");
    return SkewState{state.shift + 1, mat_vec<double>(collection[head], state.x)};
}

} // namespace nnprod
