#include "oracles.hpp"

#include <nnprod/corpus.hpp>
#include <nnprod/spectral.hpp>
#include <nnprod/structure.hpp>

#include <doctest.h>

#include <numbers>

using namespace nnprod;

namespace {

const Matrix J2{{0, 1}, {1, 0}};

std::vector<oracle::C> widen(const CVector& v) {
    std::vector<oracle::C> out;
    for (const auto& z : v) out.emplace_back(z.real(), z.imag());
    return out;
}

double eig_residual(const Matrix& a, const EigenPair& p) {
    const CVector av = mat_vec<Complex>(to_complex(a), p.eigenvector);
    double r = 0;
    for (std::size_t i = 0; i < av.size(); ++i) r = std::max(r, std::abs(av[i] - p.eigenvalue * p.eigenvector[i]));
    return r;
}

} // namespace

TEST_CASE("eigendecompose, corpus and small cases") {
    const Matrix a2 = example_collection(2)[0];
    const auto ed = eigendecompose(a2);
    const std::vector<oracle::C> stated{1, 1, -1, {0, 1}, {0, -1}, -1.0L / 3};
    CHECK(oracle::multiset_distance(widen(ed.eigenvalues), stated) < 1e-8);
    // characteristic polynomial oracle agrees
    CHECK(oracle::multiset_distance(oracle::eigenvalues(a2), stated) < 1e-8);
    for (const auto& p : ed.pairs) CHECK(eig_residual(a2, p) < 1e-9);

    const auto ej = eigendecompose(J2);
    REQUIRE(ej.pairs.size() == 2);
    CHECK(std::abs(ej.eigenvalues[0] - Complex(1)) < 1e-12);
    CHECK(std::abs(ej.eigenvalues[1] - Complex(-1)) < 1e-12);
    const double h = 1 / std::sqrt(2.0);
    for (const auto& p : ej.pairs) {
        const double sign = p.eigenvalue.real() > 0 ? 1 : -1;
        CHECK(std::abs(p.eigenvector[0] - Complex(h)) < 1e-12);
        CHECK(std::abs(p.eigenvector[1] - Complex(sign * h)) < 1e-12);
    }

    const auto jordan = eigendecompose(Matrix{{1, 1}, {0, 1}});
    REQUIRE(jordan.pairs.size() == 1);
    CHECK(jordan.pairs[0].algebraic_multiplicity == 2);
    CHECK(jordan.pairs[0].geometric_multiplicity == 1);
    CHECK(jordan.defective());
    CHECK(std::abs(std::abs(jordan.pairs[0].eigenvector[0]) - 1) < 1e-12);
    CHECK(std::abs(jordan.pairs[0].eigenvector[1]) < 1e-12);
}

TEST_CASE("eigenvalues match the characteristic-polynomial oracle") {
    oracle::Rng rng(21);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng.below(7);
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform();
        }
        const auto ed = eigendecompose(m);
        CHECK(ed.eigenvalues.size() == n);
        CHECK(oracle::multiset_distance(oracle::eigenvalues(m), widen(ed.eigenvalues)) < 1e-8);
        for (const auto& p : ed.pairs) CHECK(eig_residual(m, p) < 1e-8);
    }
}

TEST_CASE("eigenvalue ordering") {
    const auto ed = eigendecompose(example_collection(2)[0]);
    for (std::size_t i = 1; i < ed.eigenvalues.size(); ++i) {
        CHECK(std::abs(ed.eigenvalues[i]) <= std::abs(ed.eigenvalues[i - 1]) + 1e-8);
    }
}

TEST_CASE("spectral_radius") {
    const auto c6 = example_collection(6);
    const double expected = (2 + std::sqrt(3.0)) / 3;
    CHECK(std::abs(spectral_radius(mat_mul(c6[1], c6[0])) - expected) < 1e-9);
    CHECK(std::abs(oracle::spectral_radius(mat_mul(c6[1], c6[0])) - expected) < 1e-9);

    const auto c7 = example_collection(7);
    CHECK(std::abs(spectral_radius(mat_mul(c7[1], c7[0])) - 1) < 1e-9);
    CHECK(std::abs(spectral_radius(Matrix{{0.5, 0}, {0, 1.0 / 3}}) - 0.5) < 1e-14);
}

TEST_CASE("root_of_unity_order") {
    CHECK(root_of_unity_order(Complex(0, 1), 8, 1e-8) == 4u);
    CHECK(root_of_unity_order(std::polar(1.0, 2 * std::numbers::pi / 3), 8, 1e-8) == 3u);
    CHECK_FALSE(root_of_unity_order(0.9, 8, 1e-8));
    CHECK(root_of_unity_order(1.0, 8, 1e-8) == 1u);
    CHECK_FALSE(root_of_unity_order(std::polar(1.0, 2 * std::numbers::pi / 9), 8, 1e-8));
}

TEST_CASE("peripheral_period") {
    const auto p2 = peripheral_period(example_collection(2)[0]);
    CHECK(p2.values.size() == 5);
    REQUIRE(p2.period);
    CHECK(*p2.period == 4);

    const auto p3 = peripheral_period(example_collection(3)[1]);
    CHECK(p3.values.size() == 5);
    REQUIRE(p3.period);
    CHECK(*p3.period == 3);

    const auto pj = peripheral_period(J2);
    REQUIRE(pj.period);
    CHECK(*pj.period == 2);

    // strictly substochastic: peripheral values exist but have no order
    const auto sub = peripheral_period(Matrix{{0.5, 0}, {0, 0.5}});
    CHECK(std::abs(sub.rho - 0.5) < 1e-12);
}

TEST_CASE("index_of_imprimitivity") {
    Matrix j4(4, 4);
    for (std::size_t j = 0; j < 4; ++j) j4((j + 1) % 4, j) = 1;
    CHECK(index_of_imprimitivity(j4) == 4);
    CHECK(index_of_imprimitivity(Matrix{{1.0 / 3, 2.0 / 3}, {2.0 / 3, 1.0 / 3}}) == 1);
    const Matrix j3{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    CHECK(index_of_imprimitivity(j3) == 3);
    CHECK(is_irreducible(j3));
    CHECK_FALSE(is_irreducible(Matrix{{1, 1}, {0, 1}}));
    CHECK_THROWS_AS(index_of_imprimitivity(Matrix{{1, 1}, {0, 1}}), Error);
}
