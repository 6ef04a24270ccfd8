#include <nnprod/infinite_words.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

namespace nnprod {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

InfiniteWord InfiniteWord::periodic(std::vector<Letter> prefix, std::vector<Letter> cycle, std::size_t n_letters) {
    if (cycle.empty()) throw Error(ErrorCode::InvalidInput, "periodic word needs a nonempty cycle");
    if (n_letters == 0) throw Error(ErrorCode::InvalidInput, "empty alphabet");
    for (const auto* part : {&prefix, &cycle}) {
        for (Letter l : *part) {
            if (l >= n_letters) throw Error(ErrorCode::InvalidLetter, "letter outside the alphabet");
        }
    }
    InfiniteWord w;
    w.prefix_ = std::move(prefix);
    w.cycle_ = std::move(cycle);
    w.n_letters_ = n_letters;
    return w;
}

InfiniteWord InfiniteWord::seeded(std::uint64_t seed, std::size_t n_letters) {
    if (n_letters == 0) throw Error(ErrorCode::InvalidInput, "empty alphabet");
    InfiniteWord w;
    w.seeded_ = true;
    w.seed_ = seed;
    w.n_letters_ = n_letters;
    return w;
}

Letter InfiniteWord::at(std::size_t k) const {
    if (seeded_) return static_cast<Letter>(splitmix64(seed_ ^ splitmix64(k)) % n_letters_);
    if (k < prefix_.size()) return prefix_[k];
    return cycle_[(k - prefix_.size()) % cycle_.size()];
}

Word InfiniteWord::prefix(std::size_t p) const {
    if (p == 0) throw Error(ErrorCode::InvalidInput, "prefix length must be positive");
    Word w;
    w.letters.reserve(p);
    for (std::size_t k = 0; k < p; ++k) w.letters.push_back(at(k));
    return w;
}

std::vector<std::size_t> InfiniteWord::phi(std::size_t p) const {
    std::vector<std::size_t> c(n_letters_, 0);
    if (!seeded_) {
        // closed form: whole cycles plus a partial one
        const std::size_t head = std::min(p, prefix_.size());
        for (std::size_t k = 0; k < head; ++k) ++c[prefix_[k]];
        if (p > prefix_.size()) {
            const std::size_t rest = p - prefix_.size();
            const std::size_t full = rest / cycle_.size();
            for (Letter l : cycle_) c[l] += full;
            for (std::size_t k = 0; k < rest % cycle_.size(); ++k) ++c[cycle_[k]];
        }
        return c;
    }
    for (std::size_t k = 0; k < p; ++k) ++c[at(k)];
    return c;
}

std::size_t InfiniteWord::coverage_time(std::size_t cap) const {
    const std::size_t limit = seeded_ ? cap : prefix_.size() + cycle_.size();
    std::vector<bool> seen(n_letters_, false);
    std::size_t missing = n_letters_;
    for (std::size_t k = 0; k < limit; ++k) {
        const Letter l = at(k);
        if (!seen[l]) {
            seen[l] = true;
            if (--missing == 0) return k + 1;
        }
    }
    throw Error(ErrorCode::InvalidInput, "infinite word never uses every letter");
}

InfiniteWord parse_infinite_word(const MatrixCollection& collection, std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::InvalidInput, "word spec must be periodic:<letters> or seed:<integer>");
    }
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view body = spec.substr(colon + 1);
    if (kind == "seed") {
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), seed);
        if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size()) {
            throw Error(ErrorCode::InvalidInput, "malformed seed '" + std::string(body) + "'");
        }
        return InfiniteWord::seeded(seed, collection.size());
    }
    if (kind != "periodic") throw Error(ErrorCode::InvalidInput, "unknown word kind '" + std::string(kind) + "'");

    const auto open = body.find('(');
    if (open == std::string_view::npos) {
        return InfiniteWord::periodic({}, parse_word(collection, body).letters, collection.size());
    }
    const auto close = body.find(')', open);
    if (close == std::string_view::npos || close + 1 != body.size()) {
        throw Error(ErrorCode::InvalidInput, "periodic spec must end with '(cycle)'");
    }
    std::vector<Letter> head;
    if (open > 0) head = parse_word(collection, body.substr(0, open)).letters;
    return InfiniteWord::periodic(std::move(head), parse_word(collection, body.substr(open + 1, close - open - 1)).letters,
                                  collection.size());
}

std::string describe(const MatrixCollection& collection, const InfiniteWord& tau) {
    if (!tau.is_periodic()) return "seed:" + std::to_string(tau.seed());
    std::string out = "periodic:";
    if (!tau.prefix_part().empty()) out += word_to_string(collection, Word{tau.prefix_part()});
    out += '(' + word_to_string(collection, Word{tau.cycle_part()}) + ')';
    return out;
}

OrbitTuple a_tilde(const Matrix& word_matrix, unsigned long long q, std::span<const double> x,
                   const LimitOptions& opts) {
    const LimitResult lim = limit_point(word_matrix, x, q, opts);
    if (lim.status != LimitStatus::Converged) {
        throw Error(ErrorCode::ConvergenceFailure, "orbit limit " + std::string(to_string(lim.status)));
    }
    OrbitTuple t;
    t.components.push_back(lim.xi);
    for (unsigned long long i = 1; i < q; ++i) t.components.push_back(mat_vec<double>(word_matrix, t.components.back()));
    return t;
}

OrbitTuple a_tilde(const MatrixCollection& collection, const Word& word, unsigned long long q,
                   std::span<const double> x, const LimitOptions& opts) {
    return a_tilde(word_product(collection, word), q, x, opts);
}

namespace {

void require_hypotheses(const MatrixCollection& collection, const Q2Options& opts) {
    if (!pairwise_commuting(collection, opts.structure.tol)) {
        throw Error(ErrorCode::HypothesesNotMet, "collection is not pairwise commuting");
    }
    if (!all_diagonalizable(collection, opts.structure.spectral)) {
        throw Error(ErrorCode::HypothesesNotMet, "some matrix is not diagonalizable");
    }
}

double tuple_distance(const OrbitTuple& a, const OrbitTuple& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        for (std::size_t k = 0; k < a.components[i].size(); ++k) {
            d = std::max(d, std::abs(a.components[i][k] - b.components[i][k]));
        }
    }
    return d;
}

OrbitTuple checked_tuple(const Matrix& p, unsigned long long q, std::span<const double> x, const LimitOptions& opts) {
    try {
        return a_tilde(p, q, x, opts);
    } catch (const Error& e) {
        throw Error(ErrorCode::HypothesesNotMet, std::string("prefix orbit does not settle: ") + e.what());
    }
}

std::size_t saturating_budget(unsigned long long q, std::size_t kappa) {
    constexpr std::size_t cap = 100000;
    std::size_t v = 1;
    for (std::size_t j = 0; j < kappa; ++j) {
        if (v > cap / std::max<unsigned long long>(q, 1)) return cap;
        v *= q;
    }
    return std::min(v + 1, cap);
}

long long mod_q(long long v, unsigned long long q) {
    const auto qq = static_cast<long long>(q);
    return ((v % qq) + qq) % qq;
}

} // namespace

Q2Certificate q2_certificate(const MatrixCollection& collection, const InfiniteWord& tau, std::span<const double> x,
                             const Q2Options& opts) {
    if (tau.alphabet_size() != collection.size()) {
        throw Error(ErrorCode::InvalidInput, "infinite word alphabet differs from the collection size");
    }
    if (x.size() != collection.dimension()) throw Error(ErrorCode::DimensionMismatch, "q2: vector length differs");
    require_hypotheses(collection, opts);

    Q2Certificate cert;
    try {
        cert.q = global_period(collection, opts.period).q;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SpectralRadiusViolation) throw Error(ErrorCode::HypothesesNotMet, e.what());
        throw;
    }
    const CommonEigenSystem ces = common_eigenvectors(collection, opts.structure);
    cert.kappa = ces.kappa;
    const std::size_t n_letters = collection.size();
    const double two_pi = 2.0 * std::numbers::pi;

    cert.lambdas.assign(n_letters, std::vector<long long>(cert.kappa, 0));
    for (std::size_t r = 0; r < n_letters; ++r) {
        for (std::size_t j = 0; j < cert.kappa; ++j) {
            const Complex lam = ces.lambda[j][r];
            const double qd = static_cast<double>(cert.q);
            const long long e = mod_q(std::llround(qd * std::arg(lam) / two_pi), cert.q);
            const Complex target = std::polar(1.0, two_pi * static_cast<double>(e) / qd);
            if (std::abs(lam - target) > opts.lambda_tol) {
                throw Error(ErrorCode::NotRootOfUnity, "common eigenvalue is not a q-th root of unity");
            }
            cert.lambdas[r][j] = e;
        }
    }

    cert.m = tau.coverage_time();
    cert.budget = opts.budget ? *opts.budget : saturating_budget(cert.q, cert.kappa);
    if (cert.budget == 0) throw Error(ErrorCode::BudgetExhausted, "search budget is zero");

    // Group prefixes by their exact phase state; equal states give equal tuples.
    std::map<std::vector<long long>, std::vector<std::size_t>> groups;
    std::vector<std::size_t> phi = tau.phi(cert.m);
    for (std::size_t p = cert.m; p < cert.m + cert.budget; ++p) {
        if (p > cert.m) ++phi[tau.at(p - 1)];
        std::vector<long long> key(cert.kappa);
        for (std::size_t j = 0; j < cert.kappa; ++j) {
            long long acc = 0;
            for (std::size_t r = 0; r < n_letters; ++r) {
                acc = mod_q(acc + cert.lambdas[r][j] * static_cast<long long>(phi[r] % cert.q), cert.q);
            }
            key[j] = acc;
        }
        groups[key].push_back(p);
    }
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        if (!best || members.size() > best->size() ||
            (members.size() == best->size() && members.front() < best->front())) {
            best = &members;
        }
    }
    if (!best) {
        throw Error(ErrorCode::BudgetExhausted,
                    "no repeated orbit tuple within " + std::to_string(cert.budget) + " prefixes");
    }
    cert.p_gammas = *best;

    // Direct numerical check of tuple equality along the chosen group.
    Matrix prod = collection[tau.at(0)];
    std::size_t at = 1;
    bool first = true;
    for (std::size_t p : cert.p_gammas) {
        while (at < p) prod = mat_mul(collection[tau.at(at++)], prod);
        OrbitTuple t = checked_tuple(prod, cert.q, x, opts.limit);
        if (first) {
            cert.tuple = std::move(t);
            cert.xi = cert.tuple.components.front();
            first = false;
            continue;
        }
        const double tol = opts.tuple_rel * (1.0 + norm_inf<double>(cert.xi));
        if (tuple_distance(t, cert.tuple) > tol) {
            throw Error(ErrorCode::ConvergenceFailure,
                        "orbit tuples at p = " + std::to_string(cert.p_gammas.front()) + " and p = " + std::to_string(p) +
                            " differ numerically although their phase states agree");
        }
    }

    for (std::size_t p : cert.p_gammas) cert.phi.push_back(tau.phi(p));
    for (const auto& row : cert.phi) {
        std::vector<long long> res(cert.kappa);
        for (std::size_t j = 0; j < cert.kappa; ++j) {
            long long acc = 0;
            for (std::size_t r = 0; r < n_letters; ++r) {
                const long long diff = static_cast<long long>(row[r]) - static_cast<long long>(cert.phi.front()[r]);
                acc = mod_q(acc + cert.lambdas[r][j] * mod_q(diff, cert.q), cert.q);
            }
            res[j] = acc;
        }
        cert.residues.push_back(std::move(res));
    }
    return cert;
}

bool tuple_first_component_stability(const MatrixCollection& collection, const InfiniteWord& tau,
                                     std::span<const double> x, std::size_t p_lo, std::size_t p_hi,
                                     const Q2Options& opts) {
    if (p_lo == 0 || p_hi < p_lo) throw Error(ErrorCode::InvalidInput, "empty prefix range");
    require_hypotheses(collection, opts);
    const unsigned long long q = global_period(collection, opts.period).q;
    Matrix prod = collection[tau.at(0)];
    std::size_t at = 1;
    Vector ref;
    for (std::size_t p = p_lo; p <= p_hi; ++p) {
        while (at < p) prod = mat_mul(collection[tau.at(at++)], prod);
        const OrbitTuple t = checked_tuple(prod, q, x, opts.limit);
        const Vector& xi = t.components.front();
        if (ref.empty()) {
            ref = xi;
            continue;
        }
        const double tol = opts.tuple_rel * (1.0 + norm_inf<double>(ref));
        for (std::size_t i = 0; i < xi.size(); ++i) {
            if (std::abs(xi[i] - ref[i]) > tol) return false;
        }
    }
    return true;
}

} // namespace nnprod
