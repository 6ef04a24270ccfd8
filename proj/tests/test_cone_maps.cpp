#include "oracles.hpp"

#include <nnprod/cone_maps.hpp>
#include <nnprod/corpus.hpp>
#include <nnprod/word_dynamics.hpp>

#include <doctest.h>

using namespace nnprod;

namespace {

// prod_j y_j^{a_ij} in long double, straight from the definition
Vector monomial_oracle(const Matrix& a, const Vector& y) {
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        long double v = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) != 0) v *= std::pow(static_cast<long double>(y[j]), static_cast<long double>(a(i, j)));
        }
        out[i] = static_cast<double>(v);
    }
    return out;
}

double max_rel(const Vector& a, const Vector& b) {
    double r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-300));
    return r;
}

} // namespace

TEST_CASE("log and exp maps") {
    CHECK(log_map(Vector{1, 1, 1}) == Vector{0, 0, 0});
    CHECK(exp_map(Vector{0, 0}) == Vector{1, 1});
    const double e = std::exp(1.0);
    const Vector y{e, e * e, e * e * e};
    CHECK(max_rel(exp_map(log_map(y)), y) < 1e-12);
    CHECK_THROWS_AS(log_map(Vector{1, 0}), Error);
    try {
        log_map(Vector{1, 0});
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::BoundaryPoint);
    }
    try {
        log_map(Vector{1, -1});
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::InvalidInput);
    }
}

TEST_CASE("cone_apply, closed forms") {
    const auto c8 = example_collection(8);
    const auto fa = ConeMap::from(c8[0]);
    const Vector x{1, 2, 3, 4, 5, 6};
    const Vector expected{2, 3, 4, 1, std::cbrt(180.0), std::cbrt(150.0)};
    CHECK(max_rel(cone_apply(fa, x).y, expected) < 1e-14);

    oracle::Rng rng(51);
    for (int ex = 2; ex <= 7; ++ex) {
        const auto c = example_collection(ex);
        for (const auto& m : c.matrices()) {
            const auto f = ConeMap::from(m);
            CHECK(cone_apply(f, Vector(m.rows(), 1.0)).y == Vector(m.rows(), 1.0));
            for (int t = 0; t < 10; ++t) {
                Vector y(m.rows());
                for (auto& v : y) v = std::exp(rng.uniform(-3, 3));
                CHECK(max_rel(cone_apply(f, y).y, monomial_oracle(m, y)) < 1e-12);
            }
        }
    }
}

TEST_CASE("cone_apply on the boundary") {
    const auto c9 = example_collection(9);
    const auto fa = ConeMap::from(c9[0]);
    const Vector y{1, 2, 3, 4, 5, 0, 7};
    const auto v = cone_apply(fa, y);
    CHECK(v.boundary);
    CHECK(v.y[5] == 0.0);
    CHECK(v.y[6] == doctest::Approx(std::pow(7.0, 1.0 / 3)).epsilon(1e-14));
    CHECK(v.y[0] == 1.0);
    // 0^0 = 1 where the row skips the zero coordinate
    const auto g = ConeMap::from(Matrix{{1, 0}, {0, 0}});
    CHECK(cone_apply(g, Vector{0, 3}).y == Vector{0, 1});
}

TEST_CASE("cone_limit") {
    const auto c8 = example_collection(8);
    const Vector ones(6, 1.0);
    const auto r1 = cone_limit(c8, parse_word(c8, "AB"), ones, 4);
    CHECK(r1.status == LimitStatus::Converged);
    CHECK(r1.eta == ones);

    // exp(a1 v1 + a2 v2): period 2 under f_w for words with an odd count of a letter
    const Vector logy{1.2, 0.2, 1.2, 0.2, 0, 0};
    const Vector y = exp_map(logy);
    for (const char* w : {"AAB", "ABB"}) {
        const Word word = parse_word(c8, w);
        const auto r = cone_limit(c8, word, y, 4);
        REQUIRE(r.status == LimitStatus::Converged);
        CHECK(r.paths_agree);
        // period by iterating the monomial map directly
        const auto f = ConeMap::from(word_product(c8, word));
        Vector z = r.eta;
        unsigned period = 0;
        for (unsigned d = 1; d <= 8 && !period; ++d) {
            z = monomial_oracle(f.matrix, z);
            if (max_rel(z, r.eta) < 1e-9) period = d;
        }
        CHECK(period == 2);
    }

    const auto c9 = example_collection(9);
    const Vector y9 = exp_map(Vector{0.9, 0.1, -0.4, 0.2, 0.6, 0.3, -0.2});
    const Word ab = parse_word(c9, "AB");
    const auto r9 = cone_limit(c9, ab, y9, 6);
    REQUIRE(r9.status == LimitStatus::Converged);
    const auto f9 = ConeMap::from(word_product(c9, ab));
    Vector z = r9.eta;
    unsigned period = 0;
    for (unsigned d = 1; d <= 12 && !period; ++d) {
        z = monomial_oracle(f9.matrix, z);
        if (max_rel(z, r9.eta) < 1e-9) period = d;
    }
    CHECK(period == 6);
    // the decaying block tends to 1
    CHECK(std::abs(r9.eta[5] - 1) < 1e-9);
    CHECK(std::abs(r9.eta[6] - 1) < 1e-9);
}

TEST_CASE("homogeneity_report") {
    Matrix b1(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) b1(i, j) = ((i + j) % 2 == 1) ? 0.5 : 0.0;
    }
    const auto h1 = homogeneity_report(ConeMap::from(b1));
    CHECK(h1.homogeneous_degree_one);
    CHECK(h1.subhomogeneous_certified);

    const auto h2 = homogeneity_report(ConeMap::from(Matrix{{0.2, 1.0 / 6}, {1.0 / 6, 0.2}}));
    CHECK(h2.subhomogeneous_certified);
    CHECK_FALSE(h2.homogeneous_degree_one);
    CHECK(h2.exponents[0] == doctest::Approx(11.0 / 30).epsilon(1e-15));

    const auto h3 = homogeneity_report(ConeMap::from(Matrix{{0, 2}, {0.5, 0}}));
    CHECK(h3.exponents == Vector{2, 0.5});
    CHECK_FALSE(h3.subhomogeneous_certified);

    CHECK_THROWS_AS(ConeMap::from(Matrix{{0, -1}, {0, 0}}), Error);
}
