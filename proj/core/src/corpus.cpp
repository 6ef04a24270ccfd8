#include <nnprod/corpus.hpp>

#include <nnprod/cone_maps.hpp>
#include <nnprod/word_dynamics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace nnprod {

namespace {

// Block-diagonal assembly.
Matrix blocks(std::initializer_list<Matrix> parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rows();
    Matrix out(n, n);
    std::size_t at = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i) {
            for (std::size_t j = 0; j < p.cols(); ++j) out(at + i, at + j) = p(i, j);
        }
        at += p.rows();
    }
    return out;
}

// Column-partitioned permutation [e_{c0} | e_{c1} | ...], one-based.
Matrix perm(std::initializer_list<std::size_t> cols) {
    const std::size_t n = cols.size();
    Matrix p(n, n);
    std::size_t j = 0;
    for (std::size_t c : cols) p(c - 1, j++) = 1.0;
    return p;
}

Matrix diag(std::initializer_list<double> d) {
    Matrix m(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
const Complex kI{0.0, 1.0};

CheckResult make(std::string name, bool ok, std::string detail = {}) {
    return CheckResult{std::move(name), ok, std::move(detail)};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

bool same_multiset(CVector got, const CVector& want, double tol) {
    if (got.size() != want.size()) return false;
    std::vector<bool> used(got.size(), false);
    for (const auto& w : want) {
        bool found = false;
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (!used[i] && std::abs(got[i] - w) <= tol) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

CheckResult spectrum_check(const std::string& name, const Matrix& m, const CVector& want, double tol) {
    try {
        const auto ed = eigendecompose(m);
        return make(name, same_multiset(ed.eigenvalues, want, tol));
    } catch (const Error& e) {
        return make(name, false, e.what());
    }
}

// v lies (up to scale and phase) in the span of the E' vectors sharing one group.
bool in_some_group(const CommonEigenSystem& ces, CVector v, double tol) {
    const double nv = norm2<Complex>(v);
    for (auto& z : v) z /= nv;
    for (std::size_t g = 0; g <= (ces.group.empty() ? 0 : ces.group.back()); ++g) {
        double captured = 0.0;
        for (std::size_t s = 0; s < ces.d(); ++s) {
            if (ces.group[s] != g) continue;
            Complex ip{};
            for (std::size_t i = 0; i < v.size(); ++i) ip += std::conj(ces.vectors[s][i]) * v[i];
            captured += std::norm(ip);
        }
        if (std::abs(std::sqrt(captured) - 1.0) <= tol) return true;
    }
    return false;
}

Vector real_combo(std::initializer_list<std::pair<Complex, CVector>> terms, std::size_t n) {
    CVector acc(n);
    for (const auto& [a, v] : terms) {
        for (std::size_t i = 0; i < n; ++i) acc[i] += a * v[i];
    }
    return real_part(acc);
}

CVector conj_vec(CVector v) {
    for (auto& z : v) z = std::conj(z);
    return v;
}

const std::vector<std::string> kWords{"AB", "BA", "AAB", "ABB"};

std::vector<CheckResult> period_checks(const MatrixCollection& c, const std::string& tag, const Vector& x,
                                       unsigned long long stated) {
    std::vector<CheckResult> out;
    try {
        const auto q = global_period(c).q;
        const auto d = common_period(c, x, q, 1e-8);
        out.push_back(make(tag + ": common period = " + std::to_string(stated), d == stated, "got " + std::to_string(d)));
        for (const auto& w : kWords) {
            const Word word = parse_word(c, w);
            const auto p = point_period(word_product(c, word), x, q, 1e-8);
            out.push_back(make(tag + ": period under " + w + " divides " + std::to_string(stated), stated % p == 0,
                               "got " + std::to_string(p)));
        }
    } catch (const Error& e) {
        out.push_back(make(tag + ": periods", false, e.what()));
    }
    return out;
}

unsigned long long cone_common_period(const MatrixCollection& c, const Vector& eta, unsigned long long q) {
    for (unsigned long long d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool all = true;
        for (const auto& m : c.matrices()) {
            const ConeMap f = ConeMap::from(m);
            Vector y = eta;
            for (unsigned long long k = 0; k < d; ++k) y = cone_apply(f, y).y;
            for (std::size_t i = 0; i < y.size(); ++i) all = all && std::abs(y[i] - eta[i]) <= 1e-8 * std::abs(eta[i]);
        }
        if (all) return d;
    }
    return 0;
}

// Closed-form monomial map: coordinate i is prod_j x_j^{e[i][j]}.
using Monomials = std::vector<std::vector<double>>;

double lcg_uniform(unsigned long long& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

CheckResult closed_form_check(const std::string& name, const Matrix& a, const Monomials& e) {
    const ConeMap f = ConeMap::from(a);
    unsigned long long st = 0x5eed;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Vector x(a.rows());
        for (auto& v : x) v = 0.05 + 20.0 * lcg_uniform(st);
        const Vector y = cone_apply(f, x).y;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double want = 1.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (e[i][j] != 0.0) want *= std::pow(x[j], e[i][j]);
            }
            worst = std::max(worst, std::abs(y[i] - want) / std::abs(want));
        }
    }
    return make(name, worst <= 1e-10, "max rel err " + fmt(worst));
}

std::vector<CheckResult> cone_period_checks(const MatrixCollection& c, const std::string& tag, const Vector& logy,
                                            unsigned long long stated) {
    std::vector<CheckResult> out;
    try {
        const Vector y = exp_map(logy);
        const auto q = global_period(c).q;
        for (const auto& w : kWords) {
            const Word word = parse_word(c, w);
            const ConeLimitResult r = cone_limit(c, word, y, q);
            out.push_back(make(tag + ": cone limit under " + w + " converges on both paths",
                               r.status == LimitStatus::Converged && r.paths_agree, "gap " + fmt(r.path_gap)));
        }
        const auto d = cone_common_period(c, y, q);
        out.push_back(make(tag + ": exp point has common period " + std::to_string(stated), d == stated,
                           "got " + std::to_string(d)));
    } catch (const Error& e) {
        out.push_back(make(tag + ": cone periods", false, e.what()));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_example1(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    try {
        out.push_back(make("q = 2", global_period(c).q == 2));
    } catch (const Error& e) {
        out.push_back(make("q = 2", false, e.what()));
    }
    Vector x{0.0, 1.0};
    bool alternates = true;
    for (int k = 1; k <= 100; ++k) {
        x = mat_vec<double>(c[0], x);
        const Vector want = (k % 2 == 0) ? Vector{0.0, 1.0} : Vector{1.0, 0.0};
        alternates = alternates && x == want;
    }
    out.push_back(make("A^k e2 alternates e1/e2 exactly for k <= 100", alternates));
    return out;
}

std::vector<CheckResult> check_example2(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    const double s7 = std::sqrt(7.0);
    out.push_back(spectrum_check("spec(A) = {1, 1, -1, i, -i, -1/3}", c[0], {1.0, 1.0, -1.0, kI, -kI, -1.0 / 3.0}, 1e-8));
    out.push_back(spectrum_check("spec(B) = {0, 0, 1, -1, (3+-sqrt7)/10}", c[1],
                                 {0.0, 0.0, 1.0, -1.0, (3.0 + s7) / 10.0, (3.0 - s7) / 10.0}, 1e-8));
    out.push_back(make("A and B commute", max_abs(commutator(c[0], c[1])) <= 1e-12));

    const CommonEigenSystem ces = common_eigenvectors(c);
    out.push_back(make("d = 6", ces.d() == 6, "got " + std::to_string(ces.d())));
    out.push_back(make("kappa = 2", ces.kappa == 2, "got " + std::to_string(ces.kappa)));
    const std::vector<CVector> vs{{1, 1, 1, 1, 0, 0}, {1, -1, 1, -1, 0, 0}, {1, kI, -1, -kI, 0, 0}, {1, -kI, -1, kI, 0, 0}};
    for (std::size_t k = 0; k < vs.size(); ++k) {
        out.push_back(make("v" + std::to_string(k + 1) + " is a common eigenvector", in_some_group(ces, vs[k], 1e-8)));
    }
    bool row_v2 = false;
    for (std::size_t s = 0; s < ces.d(); ++s) {
        if (std::abs(ces.vectors[s][0]) > 0.1 && std::abs(ces.vectors[s][1] + ces.vectors[s][0]) < 1e-8) {
            row_v2 = std::abs(ces.lambda[s][0] + 1.0) < 1e-8 && std::abs(ces.lambda[s][1] + 1.0) < 1e-8;
        }
    }
    out.push_back(make("eigenvalues on v2 are (-1, -1)", row_v2));

    try {
        const auto pc = global_period(c);
        out.push_back(make("q_A = 4, q_B = 2, q = 4", pc.q_r == std::vector<unsigned long long>{4, 2} && pc.q == 4));
    } catch (const Error& e) {
        out.push_back(make("q_A = 4, q_B = 2, q = 4", false, e.what()));
    }
    const Vector x12 = real_combo({{1.0, vs[0]}, {1.0, vs[1]}}, 6);
    for (auto& r : period_checks(c, "v1+v2", x12, 2)) out.push_back(std::move(r));

    const Vector x34 = real_combo({{Complex(0.5, 0.25), vs[2]}, {Complex(0.5, -0.25), vs[3]}}, 6);
    out.push_back(make("alpha3 v3 + conj(alpha3) v4 is in LC(E')", lc_membership(x34, ces).has_value()));
    out.push_back(make("B (alpha3 v3 + alpha4 v4) = 0", norm_inf<double>(mat_vec<double>(c[1], x34)) <= 1e-12));

    const Vector x56{0, 0, 0, 0, 0.7, -0.2};
    const auto lim = limit_point(c, parse_word(c, "AB"), x56, 4);
    out.push_back(make("alpha5 v5 + alpha6 v6 tends to 0 under AB",
                       lim.status == LimitStatus::Converged && norm_inf<double>(lim.xi) <= 1e-9));
    return out;
}

std::vector<CheckResult> check_example3(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    try {
        out.push_back(make("q = 6", global_period(c).q == 6));
    } catch (const Error& e) {
        out.push_back(make("q = 6", false, e.what()));
    }
    out.push_back(make("A and B commute", max_abs(commutator(c[0], c[1])) <= 1e-12));
    const Complex w = kOmega;
    const CVector v1{1, 1, 1, 0, 0, 0, 0}, v2{1, w, w * w, 0, 0, 0, 0}, v4{0, 0, 0, 1, 1, 0, 0}, v5{0, 0, 0, 1, -1, 0, 0};
    const CommonEigenSystem ces = common_eigenvectors(c);
    out.push_back(make("d = 7, kappa = 5", ces.d() == 7 && ces.kappa == 5));
    for (const auto* v : {&v1, &v2, &v4, &v5}) {
        if (!in_some_group(ces, *v, 1e-8)) out.push_back(make("listed eigenvector found", false));
    }
    const Complex a2(0.3, 0.2);
    const Vector x = real_combo({{0.5, v1}, {a2, v2}, {std::conj(a2), conj_vec(v2)}, {-0.6, v4}, {0.8, v5}}, 7);
    bool six = true;
    for (const auto& wd : kWords) {
        const Matrix m6 = matrix_power(word_product(c, parse_word(c, wd)), 6);
        const Vector y = mat_vec<double>(m6, x);
        for (std::size_t i = 0; i < 7; ++i) six = six && std::abs(y[i] - x[i]) <= 1e-8;
    }
    out.push_back(make("(A_w)^6 x = x for AB, BA, AAB, ABB", six));
    for (auto& r : period_checks(c, "x", x, 6)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckResult> check_example4(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    out.push_back(make("A and B do not commute", max_abs(commutator(c[0], c[1])) > 1e-6));
    const CommonEigenSystem ces = common_eigenvectors(c);
    out.push_back(make("exactly 5 common eigenvectors", ces.d() == 5, "got " + std::to_string(ces.d())));
    out.push_back(make("kappa = 2", ces.kappa == 2, "got " + std::to_string(ces.kappa)));
    const CVector v1{1, 1, 1, 1, 0, 0}, v2{1, -1, 1, -1, 0, 0}, v3{0, 0, 0, 0, 1, 1}, v4{1, kI, -1, -kI, 0, 0};
    bool listed = true;
    for (const auto* v : {&v1, &v2, &v3, &v4}) listed = listed && in_some_group(ces, *v, 1e-8);
    out.push_back(make("listed eigenvectors found", listed));
    const CVector va{0, 0, 0, 0, 1, -1};
    out.push_back(make("v_A is not common", !in_some_group(ces, va, 1e-6)));
    const Complex a4(0.4, -0.3);
    const Vector x45 = real_combo({{a4, v4}, {std::conj(a4), conj_vec(v4)}}, 6);
    out.push_back(make("B (alpha4 v4 + alpha5 v5) = 0", norm_inf<double>(mat_vec<double>(c[1], x45)) <= 1e-10));
    const Vector e5{0, 0, 0, 0, 1, 0};
    out.push_back(make("e5 is not in LC(E')", !lc_membership(e5, ces).has_value()));
    const Vector x12 = real_combo({{1.5, v1}, {-0.5, v2}}, 6);
    for (auto& r : period_checks(c, "alpha1 v1 + alpha2 v2", x12, 2)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckResult> check_example5(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    out.push_back(make("A and B do not commute", max_abs(commutator(c[0], c[1])) > 1e-6));
    const CommonEigenSystem ces = common_eigenvectors(c);
    out.push_back(make("6 common eigenvectors", ces.d() == 6, "got " + std::to_string(ces.d())));
    out.push_back(make("kappa = 5", ces.kappa == 5, "got " + std::to_string(ces.kappa)));
    const Complex w = kOmega;
    const CVector v1{1, w, w * w, 0, 0, 0, 0}, v3{1, 1, 1, 0, 0, 0, 0}, v4{0, 0, 0, 1, 1, 0, 0}, v5{0, 0, 0, 1, -1, 0, 0},
        v6{0, 0, 0, 0, 0, 1, 1};
    bool listed = true;
    for (const auto* v : {&v1, &v3, &v4, &v5, &v6}) listed = listed && in_some_group(ces, *v, 1e-8);
    out.push_back(make("listed eigenvectors found", listed));
    const Complex a1(-0.2, 0.45);
    const Vector x = real_combo({{a1, v1}, {std::conj(a1), conj_vec(v1)}, {0.3, v3}, {1.1, v4}, {-0.7, v5}}, 7);
    for (auto& r : period_checks(c, "x", x, 6)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckResult> check_example6(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    const Matrix ab = mat_mul(c[0], c[1]);
    const double rho = spectral_radius(ab);
    const double want = (2.0 + std::sqrt(3.0)) / 3.0;
    out.push_back(make("rho(AB) = (2+sqrt3)/3", std::abs(rho - want) <= 1e-9 * want, "got " + fmt(rho)));
    const auto ed = eigendecompose(ab);
    Vector v = real_part(ed.pairs.front().eigenvector);
    if (v[0] + v[1] + v[2] < 0) {
        for (auto& z : v) z = -z;
    }
    // word "BA" has product A*B
    const auto ob = orbit_bounded(c, parse_word(c, "BA"), v, 200, 1e12);
    out.push_back(make("Perron orbit of AB exceeds the bound within 200 steps", !ob.bounded_so_far,
                       ob.exceeded_at ? "step " + std::to_string(*ob.exceeded_at) : "bounded"));
    const auto v1 = c.validation(1e-8);
    out.push_back(make("both matrices have spectral radius 1", v1.all_rho_ok));
    return out;
}

std::vector<CheckResult> check_example7(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    const auto pc = classify_pair(c[0], c[1]);
    out.push_back(make("Laffey pair (commutator rank 1)", pc.laffey && !pc.commuting));
    const Matrix ab = mat_mul(c[0], c[1]);
    const Matrix ba = mat_mul(c[1], c[0]);
    out.push_back(spectrum_check("spec(AB) = {1, 1/15}", ab, {1.0, 1.0 / 15.0}, 1e-9));
    auto lim = [&](const Matrix& m, Vector x) { return limit_point(m, x, 1).xi; };
    auto gap = [&](Vector x) {
        const Vector a = lim(ab, x), b = lim(ba, x);
        double g = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
        return g;
    };
    out.push_back(make("limits agree on (1,1)", gap({1.0, 1.0}) <= 1e-8));
    out.push_back(make("limits differ on (2,-1)", gap({2.0, -1.0}) > 0.01, "gap " + fmt(gap({2.0, -1.0}))));
    out.push_back(make("limits differ on (1,-1)", gap({1.0, -1.0}) > 0.01, "gap " + fmt(gap({1.0, -1.0}))));
    return out;
}

std::vector<CheckResult> check_example8(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    const double s7 = std::sqrt(7.0) / 10.0;
    out.push_back(closed_form_check("f_A closed form", c[0],
                                    {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {1, 0, 0, 0, 0, 0},
                                     {0, 0, 0, 0, 1.0 / 3, 2.0 / 3}, {0, 0, 0, 0, 2.0 / 3, 1.0 / 3}}));
    out.push_back(closed_form_check("f_B closed form (last block from B2)", c[1],
                                    {{0, .5, 0, .5, 0, 0}, {.5, 0, .5, 0, 0, 0}, {0, .5, 0, .5, 0, 0}, {.5, 0, .5, 0, 0, 0},
                                     {0, 0, 0, 0, 0.3, s7}, {0, 0, 0, 0, s7, 0.3}}));
    const Vector logy{1.2, 0.2, 1.2, 0.2, 0, 0}; // 0.7 v1 + 0.5 v2
    for (auto& r : cone_period_checks(c, "exp(a1 v1 + a2 v2)", logy, 2)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckResult> check_example9(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    out.push_back(closed_form_check("f_A closed form", c[0],
                                    {{1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0},
                                     {0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, .5, 0}, {0, 0, 0, 0, 0, 0, 1.0 / 3}}));
    out.push_back(closed_form_check("f_B closed form", c[1],
                                    {{0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0},
                                     {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, .2, 0}, {0, 0, 0, 0, 0, 0, 1.0 / 6}}));
    const Complex w = kOmega;
    const CVector v1{1, 1, 1, 0, 0, 0, 0}, v2{1, w, w * w, 0, 0, 0, 0}, v4{0, 0, 0, 1, 1, 0, 0}, v5{0, 0, 0, 1, -1, 0, 0};
    const Complex a2(0.3, 0.2);
    const Vector logy = real_combo({{0.5, v1}, {a2, v2}, {std::conj(a2), conj_vec(v2)}, {-0.6, v4}, {0.8, v5}}, 7);
    for (auto& r : cone_period_checks(c, "exp(sum a_s v_s)", logy, 6)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckResult> check_example10(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    out.push_back(closed_form_check("f_A closed form", c[0],
                                    {{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {1, 0, 0, 0, 0, 0},
                                     {0, 0, 0, 0, .2, 1.0 / 6}, {0, 0, 0, 0, 1.0 / 6, .2}}));
    out.push_back(closed_form_check("f_B closed form", c[1],
                                    {{0, .5, 0, .5, 0, 0}, {.5, 0, .5, 0, 0, 0}, {0, .5, 0, .5, 0, 0}, {.5, 0, .5, 0, 0, 0},
                                     {0, 0, 0, 0, 1.0 / 7, .125}, {0, 0, 0, 0, 1.0 / 7, .125}}));
    const Vector logy{0.3, 1.1, 0.3, 1.1, 0, 0}; // 0.7 v1 - 0.4 v2
    for (auto& r : cone_period_checks(c, "exp(a1 v1 + a2 v2)", logy, 2)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckResult> check_example11(const MatrixCollection& c) {
    std::vector<CheckResult> out;
    out.push_back(closed_form_check("f_A closed form", c[0],
                                    {{1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0},
                                     {0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, .5, .5}, {0, 0, 0, 0, 0, .5, .5}}));
    out.push_back(closed_form_check("f_B closed form", c[1],
                                    {{0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0},
                                     {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1.0 / 3, .25}, {0, 0, 0, 0, 0, 1.0 / 3, .25}}));
    const Complex w = kOmega;
    const CVector v1{1, w, w * w, 0, 0, 0, 0}, v3{1, 1, 1, 0, 0, 0, 0}, v4{0, 0, 0, 1, 1, 0, 0}, v5{0, 0, 0, 1, -1, 0, 0};
    const Complex a1(-0.2, 0.45);
    const Vector logy = real_combo({{a1, v1}, {std::conj(a1), conj_vec(v1)}, {0.3, v3}, {1.1, v4}, {-0.7, v5}}, 7);
    for (auto& r : cone_period_checks(c, "exp(sum a_s v_s)", logy, 6)) out.push_back(std::move(r));
    return out;
}

} // namespace

MatrixCollection example_collection(int number) {
    const double t = 1.0 / 3.0;
    switch (number) {
    case 1: return MatrixCollection(std::vector<Matrix>{perm({2, 1})});
    case 2:
    case 8: {
        const double s7 = std::sqrt(7.0) / 10.0;
        Matrix b1(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) b1(i, j) = ((i + j) % 2 == 1) ? 0.5 : 0.0;
        }
        return MatrixCollection(std::vector<Matrix>{blocks({perm({4, 1, 2, 3}), Matrix{{t, 2 * t}, {2 * t, t}}}),
                                 blocks({b1, Matrix{{0.3, s7}, {s7, 0.3}}})});
    }
    case 3:
    case 9:
        return MatrixCollection(std::vector<Matrix>{blocks({Matrix::identity(3), perm({2, 1}), diag({0.5, t})}),
                                 blocks({perm({3, 1, 2}), Matrix::identity(2), diag({0.2, 1.0 / 6.0})})});
    case 4:
    case 10: {
        Matrix b1(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) b1(i, j) = ((i + j) % 2 == 1) ? 0.5 : 0.0;
        }
        return MatrixCollection(std::vector<Matrix>{blocks({perm({4, 1, 2, 3}), Matrix{{0.2, 1.0 / 6.0}, {1.0 / 6.0, 0.2}}}),
                                 blocks({b1, Matrix{{1.0 / 7.0, 0.125}, {1.0 / 7.0, 0.125}}})});
    }
    case 5:
    case 11:
        return MatrixCollection(std::vector<Matrix>{blocks({Matrix::identity(3), perm({2, 1}), Matrix{{0.5, 0.5}, {0.5, 0.5}}}),
                                 blocks({perm({3, 1, 2}), Matrix::identity(2), Matrix{{t, 0.25}, {t, 0.25}}})});
    case 6:
        return MatrixCollection(std::vector<Matrix>{Matrix{{1, 0, 0}, {0, t, 2 * t}, {0, 2 * t, t}},
                                 Matrix{{1, 0, 0}, {0, t, 4 * t}, {0, t, t}}});
    case 7: return MatrixCollection(std::vector<Matrix>{Matrix{{t, 2 * t}, {2 * t, t}}, Matrix{{0.2, 0.8}, {0.4, 0.6}}});
    default: throw Error(ErrorCode::InvalidInput, "no built-in example " + std::to_string(number));
    }
}

std::vector<ExampleCase> builtin_examples() {
    using Fn = std::vector<CheckResult> (*)(const MatrixCollection&);
    const std::vector<std::pair<const char*, Fn>> table{
        {"J2 alone, period 2", check_example1},
        {"commuting 6x6 pair, spectra and periods", check_example2},
        {"commuting 7x7 pair with cube roots, period 6", check_example3},
        {"non-commuting 6x6 pair, five common eigenvectors", check_example4},
        {"non-commuting 7x7 pair, period 6", check_example5},
        {"product with spectral radius above 1", check_example6},
        {"Laffey pair with word-dependent limits", check_example7},
        {"cone maps of the 6x6 commuting pair", check_example8},
        {"cone maps of the 7x7 commuting pair", check_example9},
        {"cone maps of the 6x6 non-commuting pair", check_example10},
        {"cone maps of the 7x7 non-commuting pair", check_example11},
    };
    std::vector<ExampleCase> out;
    for (std::size_t k = 0; k < table.size(); ++k) {
        const int number = static_cast<int>(k) + 1;
        out.push_back(ExampleCase{"example" + std::to_string(number), table[k].first, example_collection(number),
                                  table[k].second});
    }
    return out;
}

} // namespace nnprod
