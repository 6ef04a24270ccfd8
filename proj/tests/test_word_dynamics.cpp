#include "oracles.hpp"

#include <nnprod/corpus.hpp>
#include <nnprod/word_dynamics.hpp>

#include <doctest.h>

using namespace nnprod;

namespace {

const Matrix J2{{0, 1}, {1, 0}};

const Vector v1{1, 1, 1, 1, 0, 0};
const Vector v2{1, -1, 1, -1, 0, 0};

Vector add(Vector a, const Vector& b, double s = 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

} // namespace

TEST_CASE("parse_word") {
    const auto c = example_collection(2);
    CHECK(parse_word(c, "ABBA").letters == std::vector<Letter>{0, 1, 1, 0});
    CHECK(parse_word(c, "A, B").letters == std::vector<Letter>{0, 1});
    CHECK_THROWS_AS(parse_word(c, "AC"), Error);
    CHECK_THROWS_AS(parse_word(c, ""), Error);

    const MatrixCollection named({"P", "PQ"}, {J2, J2});
    CHECK(parse_word(named, "PQP").letters == std::vector<Letter>{1, 0});
    CHECK(parse_word(named, "P P PQ").letters == std::vector<Letter>{0, 0, 1});

    CHECK(factor_order(c, parse_word(c, "AB")) == "B*A");
    CHECK(word_to_string(c, parse_word(c, "AAB")) == "AAB");
}

TEST_CASE("word_product") {
    const auto c7 = example_collection(7);
    const Matrix ab = word_product(c7, parse_word(c7, "AB"));
    CHECK(ab == mat_mul(c7[1], c7[0]));
    const Matrix ba = word_product(c7, parse_word(c7, "BA"));
    CHECK(max_abs(sub(ab, ba)) > 1e-3);
    const Matrix aaa = word_product(c7, parse_word(c7, "AAA"));
    CHECK(max_abs(sub(aaa, matrix_power(c7[0], 3))) < 1e-15);

    oracle::Rng rng(41);
    const auto c2 = example_collection(2);
    for (int t = 0; t < 20; ++t) {
        Word w;
        for (std::size_t k = 0, len = 1 + rng.below(8); k < len; ++k) w.letters.push_back(rng.below(2));
        const auto ref = oracle::word_matrix(c2.matrices(), w.letters);
        const Matrix got = word_product(c2, w);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(got(i, j) - static_cast<double>(ref[i][j])) < 1e-14);
        }
    }
}

TEST_CASE("global_period") {
    const auto p2 = global_period(example_collection(2));
    CHECK(p2.q_r == std::vector<unsigned long long>{4, 2});
    CHECK(p2.q == 4);
    CHECK(global_period(example_collection(3)).q == 6);
    CHECK(global_period(MatrixCollection(std::vector<Matrix>{J2})).q == 2);
    // word restricted to one letter
    const auto c2 = example_collection(2);
    CHECK(word_period(c2, parse_word(c2, "BB")).q == 2);
    CHECK_THROWS_AS(global_period(MatrixCollection(std::vector<Matrix>{Matrix{{2}}})), Error);
}

TEST_CASE("orbit_bounded") {
    const auto c6 = example_collection(6);
    const Matrix ab = mat_mul(c6[1], c6[0]);
    // Perron vector of AB by the oracle's power iteration
    std::vector<oracle::Real> z{1, 1, 1};
    const auto m = oracle::from(ab);
    for (int k = 0; k < 200; ++k) {
        z = oracle::apply(m, z);
        oracle::Real s = 0;
        for (auto v : z) s = std::max(s, std::abs(v));
        for (auto& v : z) v /= s;
    }
    const auto r = orbit_bounded(c6, parse_word(c6, "AB"), oracle::narrow(z), 200, 1e12);
    CHECK_FALSE(r.bounded_so_far);
    REQUIRE(r.exceeded_at);
    CHECK(*r.exceeded_at <= 200);

    const auto c2 = example_collection(2);
    const Vector x = add(add(v1, v2), Vector{1, 0, -1, 0, 0, 0});
    CHECK(orbit_bounded(c2, parse_word(c2, "AAB"), x, 10000, 1e6).bounded_so_far);

    const MatrixCollection c1(std::vector<Matrix>{J2});
    CHECK(orbit_bounded(c1, parse_word(c1, "A"), Vector{0, 1}, 100, 10).bounded_so_far);
}

TEST_CASE("limit_point") {
    const MatrixCollection c1(std::vector<Matrix>{J2});
    const auto l1 = limit_point(c1, parse_word(c1, "A"), Vector{0, 1}, 2);
    CHECK(l1.status == LimitStatus::Converged);
    CHECK(l1.xi == Vector{0, 1});
    CHECK(mat_vec<double>(J2, l1.xi) == Vector{1, 0});

    const auto c2 = example_collection(2);
    const Vector v5{0, 0, 0, 0, 1, 1}, v6{0, 0, 0, 0, 1, -1};
    const Vector x56 = add(Vector(v5), v6, -0.7);
    for (const char* w : {"AB", "BA", "AAB", "ABB"}) {
        const auto l = limit_point(c2, parse_word(c2, w), x56, 4);
        CHECK(l.status == LimitStatus::Converged);
        CHECK(oracle::norm_inf(l.xi) < 1e-9);
    }
    const auto lv1 = limit_point(c2, parse_word(c2, "AB"), v1, 4);
    CHECK(oracle::dist_inf(lv1.xi, v1) < 1e-12);

    // agrees with plain iteration on random nonnegative input
    oracle::Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        Vector x(6);
        for (auto& v : x) v = rng.uniform(-2, 2);
        const Word w = parse_word(c2, t % 2 ? "AB" : "ABB");
        const auto got = limit_point(c2, w, x, 4);
        const auto ref = oracle::iterate_limit(oracle::word_matrix(c2.matrices(), w.letters), x, 4);
        REQUIRE(ref.converged);
        CHECK(oracle::dist_inf(got.xi, ref.xi) < 1e-8);
    }

    // divergence is reported, not thrown
    const auto c6 = example_collection(6);
    const auto d = limit_point(c6, parse_word(c6, "AB"), Vector{1, 1, 1}, 1);
    CHECK(d.status == LimitStatus::Diverged);
    const auto mi = limit_point(c2, parse_word(c2, "AAB"), v2, 1, LimitOptions{1e-10, 5, 1e12});
    CHECK(mi.status == LimitStatus::MaxIter);
}

TEST_CASE("spectral_limit") {
    const auto c2 = example_collection(2);
    const auto ces = common_eigenvectors(c2);
    const Vector x = add(add(v1, v2), Vector{0, 0, 0, 0, 1, 1});
    const auto a = lc_membership(x, ces);
    REQUIRE(a);
    CHECK(oracle::dist_inf(spectral_limit(ces, *a), add(v1, v2)) < 1e-10);

    LCCoefficients zero{CVector(ces.d()), 0.0};
    CHECK(oracle::norm_inf(spectral_limit(ces, zero)) == 0.0);

    const auto c3 = example_collection(3);
    const auto e3 = common_eigenvectors(c3);
    // sum of the five modulus-one directions is e1+e2+e3 scaled plus the swap block
    const Vector y{0.5, 0.2, -0.1, 0.7, -0.3, 0, 0};
    const auto ay = lc_membership(y, e3);
    REQUIRE(ay);
    CHECK(oracle::dist_inf(spectral_limit(e3, *ay), y) < 1e-10);

    // a word without B keeps v3, v4 (lambda_A = +-i, lambda_B = 0)
    const auto aa = parse_word(c2, "AA");
    const Vector xa = add(v1, Vector{2, 0, -2, 0, 0, 0});
    const auto coeffs = lc_membership(xa, ces);
    REQUIRE(coeffs);
    const auto lim = limit_point(c2, aa, xa, 4);
    REQUIRE(lim.status == LimitStatus::Converged);
    CHECK(oracle::dist_inf(lim.xi, xa) < 1e-12);
    CHECK(oracle::dist_inf(spectral_limit(ces, *coeffs, aa, 2), lim.xi) < 1e-8);
    CHECK(oracle::dist_inf(spectral_limit(ces, *coeffs), v1) < 1e-10);
}

TEST_CASE("point_period") {
    const auto c2 = example_collection(2);
    const Vector x = add(v1, v2);
    // the literal word AB gives period 1 here (both eigenvalues on v2 are -1);
    // words with an odd count of one letter give 2
    const unsigned ref_ab = oracle::brute_period(oracle::word_matrix(c2.matrices(), {0, 1}), x, 8);
    CHECK(point_period(word_product(c2, parse_word(c2, "AB")), x, 4) == ref_ab);
    CHECK(ref_ab == 1);
    const unsigned ref_aab = oracle::brute_period(oracle::word_matrix(c2.matrices(), {0, 0, 1}), x, 8);
    CHECK(point_period(word_product(c2, parse_word(c2, "AAB")), x, 4) == ref_aab);
    CHECK(ref_aab == 2);
    CHECK(common_period(c2, x, 4) == 2);
    CHECK(point_period(word_product(c2, parse_word(c2, "AB")), v1, 4) == 1);

    const auto c3 = example_collection(3);
    const Vector y{1, 1, 1, 1, 0, 0, 0};
    const Vector z{0.9, 0.1, -0.4, 0.2, 0.6, 0, 0};
    const Matrix m3 = word_product(c3, parse_word(c3, "AB"));
    CHECK(point_period(m3, z, 6) == oracle::brute_period(oracle::from(m3), z, 12));
    CHECK(point_period(m3, z, 6) == 6);
    CHECK(point_period(m3, y, 6) == oracle::brute_period(oracle::from(m3), y, 12));

    CHECK_THROWS_AS(point_period(c2[0], Vector{1, 0, 0, 0, 1, 0}, 4), Error);
}

TEST_CASE("skew_product_step") {
    const auto c7 = example_collection(7);
    SkewState s{0, {2, -1}};
    s = skew_product_step(c7, 0, s);
    s = skew_product_step(c7, 1, s);
    CHECK(s.shift == 2);
    const auto ref = oracle::narrow(oracle::apply(oracle::word_matrix(c7.matrices(), {0, 1}), oracle::widen({2, -1})));
    CHECK(oracle::dist_inf(s.x, ref) < 1e-15);

    const MatrixCollection c1(std::vector<Matrix>{J2});
    SkewState e{0, {0, 1}};
    e = skew_product_step(c1, 0, e);
    CHECK(e.x == Vector{1, 0});
    e = skew_product_step(c1, 0, e);
    CHECK(e.x == Vector{0, 1});

    SkewState zero{0, {0, 0}};
    for (Letter r : {0, 1, 1, 0}) zero = skew_product_step(c7, r, zero);
    CHECK(zero.x == Vector{0, 0});
}
