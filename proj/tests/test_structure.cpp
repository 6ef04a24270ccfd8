#include "oracles.hpp"

#include <nnprod/corpus.hpp>
#include <nnprod/structure.hpp>

#include <doctest.h>

using namespace nnprod;

namespace {

// Distance from v to span of the columns of `basis` (orthonormal by construction here).
double dist_to_span(const std::vector<CVector>& basis, const CVector& v) {
    std::vector<std::vector<Complex>> cols(basis.begin(), basis.end());
    // real and imaginary parts separately: the oracle least squares takes real right-hand sides
    std::vector<double> re, im;
    for (const auto& z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return std::hypot(oracle::least_squares_residual(cols, re), oracle::least_squares_residual(cols, im));
}

bool is_common_eigenvector(const MatrixCollection& c, const CVector& v, double tol) {
    for (const auto& m : c.matrices()) {
        const CVector mv = mat_vec<Complex>(to_complex(m), v);
        std::size_t k = 0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (std::abs(v[i]) > std::abs(v[k])) k = i;
        }
        const Complex lam = mv[k] / v[k];
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(mv[i] - lam * v[i]) > tol) return false;
        }
    }
    return true;
}

// Stack [A^k, B^l] for 1 <= k, l <= n-1 and take the oracle rank.
std::size_t brute_shemesh_dimension(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    oracle::RMat stack;
    oracle::RMat ak = oracle::from(a);
    for (std::size_t k = 1; k < n; ++k) {
        oracle::RMat bl = oracle::from(b);
        for (std::size_t l = 1; l < n; ++l) {
            const auto ab = oracle::mul(ak, bl), ba = oracle::mul(bl, ak);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<oracle::Real> row(n);
                for (std::size_t j = 0; j < n; ++j) row[j] = ab[i][j] - ba[i][j];
                stack.push_back(row);
            }
            bl = oracle::mul(bl, oracle::from(b));
        }
        ak = oracle::mul(ak, oracle::from(a));
    }
    return n - oracle::rank(stack);
}

} // namespace

TEST_CASE("commutator") {
    const auto c2 = example_collection(2);
    CHECK(max_abs(commutator(c2[0], c2[1])) < 1e-12);
    const auto c7 = example_collection(7);
    CHECK(oracle::rank(oracle::from(commutator(c7[0], c7[1]))) == 1);
    CHECK(max_abs(commutator(c7[0], c7[0])) == 0.0);
}

TEST_CASE("shemesh_subspace") {
    const auto c2 = example_collection(2);
    CHECK(shemesh_subspace(c2[0], c2[1]).cols() == 6);

    const auto c7 = example_collection(7);
    const Matrix s7 = shemesh_subspace(c7[0], c7[1]);
    REQUIRE(s7.cols() == 1);
    CHECK(brute_shemesh_dimension(c7[0], c7[1]) == 1);
    CHECK(std::abs(std::abs(s7(0, 0)) - 1 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(s7(0, 0) - s7(1, 0)) < 1e-10);

    const auto c6 = example_collection(6);
    const Matrix s6 = shemesh_subspace(c6[0], c6[1]);
    REQUIRE(s6.cols() == 1);
    CHECK(brute_shemesh_dimension(c6[0], c6[1]) == 1);
    CHECK(std::abs(std::abs(s6(0, 0)) - 1) < 1e-10);
}

TEST_CASE("classify_pair") {
    const auto c3 = example_collection(3);
    const auto k3 = classify_pair(c3[0], c3[1]);
    CHECK(k3.commuting);
    CHECK(k3.quasi_commuting);
    CHECK_FALSE(k3.laffey);

    const auto c7 = example_collection(7);
    const auto k7 = classify_pair(c7[0], c7[1]);
    CHECK_FALSE(k7.commuting);
    CHECK(k7.laffey);
    CHECK(k7.commutator_rank == 1);
    CHECK(k7.partially_commuting());

    const auto c4 = example_collection(4);
    const auto k4 = classify_pair(c4[0], c4[1]);
    CHECK_FALSE(k4.commuting);
    CHECK(k4.shemesh_dimension >= 5);
    CHECK(k4.shemesh_dimension == brute_shemesh_dimension(c4[0], c4[1]));
}

TEST_CASE("is_quasi_commuting") {
    CHECK(is_quasi_commuting(example_collection(2)).quasi_commuting);
    CHECK(is_quasi_commuting(MatrixCollection(std::vector<Matrix>{Matrix{{1, 1}, {0, 1}}, Matrix{{1, 2}, {0, 1}}}))
              .quasi_commuting);

    const auto c7 = example_collection(7);
    const auto q7 = is_quasi_commuting(c7);
    CHECK_FALSE(q7.quasi_commuting);
    REQUIRE(q7.witness);
    // direct evaluation of [A, [A, B]] and [B, [A, B]]
    const auto a = oracle::from(c7[0]), b = oracle::from(c7[1]);
    const auto ab = oracle::mul(a, b), ba = oracle::mul(b, a);
    oracle::RMat c(2, std::vector<oracle::Real>(2));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) c[i][j] = ab[i][j] - ba[i][j];
    }
    oracle::Real worst = 0;
    for (const auto* m : {&a, &b}) {
        const auto mc = oracle::mul(*m, c), cm = oracle::mul(c, *m);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(mc[i][j] - cm[i][j]));
        }
    }
    CHECK(worst > 1e-3);
    CHECK(q7.witness->norm > 1e-3);
}

TEST_CASE("simultaneous_triangularization") {
    auto triangular_error = [](const MatrixCollection& c, const ComplexMatrix& u) {
        double worst = 0;
        for (const auto& m : c.matrices()) {
            const ComplexMatrix t = mat_mul(adjoint(u), mat_mul(to_complex(m), u));
            for (std::size_t i = 0; i < t.rows(); ++i) {
                for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(t(i, j)));
            }
        }
        const ComplexMatrix id = mat_mul(adjoint(u), u);
        return std::max(worst, max_abs(sub(id, ComplexMatrix::identity(u.rows()))));
    };
    oracle::Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + rng.below(5);
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform();
        }
        const MatrixCollection single(std::vector<Matrix>{m});
        const auto u = simultaneous_triangularization(single);
        REQUIRE(u);
        CHECK(triangular_error(single, *u) < 1e-8);
    }
    for (int e : {2, 3, 7}) {
        const auto c = example_collection(e);
        const auto u = simultaneous_triangularization(c);
        REQUIRE(u);
        CHECK(triangular_error(c, *u) < 1e-8);
    }
    // Example 6 shares only e1; the 2x2 remainder has no common eigenvector
    CHECK_FALSE(simultaneous_triangularization(example_collection(6)));
}

TEST_CASE("common_eigenvectors, example 2") {
    const auto c = example_collection(2);
    const auto ces = common_eigenvectors(c);
    CHECK(ces.d() == 6);
    CHECK(ces.kappa == 2);
    for (const auto& v : ces.vectors) CHECK(is_common_eigenvector(c, v, 1e-9));
    const CVector v2{0.5, -0.5, 0.5, -0.5, 0, 0};
    bool found = false;
    for (std::size_t s = 0; s < ces.d(); ++s) {
        if (dist_to_span({ces.vectors[s]}, v2) < 1e-8) {
            found = true;
            CHECK(std::abs(ces.lambda[s][0] + 1.0) < 1e-9);
            CHECK(std::abs(ces.lambda[s][1] + 1.0) < 1e-9);
        }
    }
    CHECK(found);
    // kappa-prefix has modulus-one eigenvalues for both letters
    for (std::size_t s = 0; s < ces.d(); ++s) {
        const bool unit = std::abs(std::abs(ces.lambda[s][0]) - 1) < 1e-8 && std::abs(std::abs(ces.lambda[s][1]) - 1) < 1e-8;
        CHECK(unit == (s < ces.kappa));
    }
    for (const auto& [a, b] : ces.s2_pairs) {
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(ces.vectors[a][i] - std::conj(ces.vectors[b][i])) < 1e-10);
        CHECK(ces.conjugate_of(a) == b);
    }
}

TEST_CASE("common_eigenvectors, examples 4 and 5") {
    const auto c4 = example_collection(4);
    const auto e4 = common_eigenvectors(c4);
    CHECK(e4.d() == 5);
    CHECK(e4.kappa == 2);
    const CVector vA{0, 0, 0, 0, 1, -1};
    CHECK(dist_to_span(e4.vectors, vA) > 0.5);
    CHECK_FALSE(is_common_eigenvector(c4, vA, 1e-6));

    const auto c5 = example_collection(5);
    const auto e5 = common_eigenvectors(c5);
    CHECK(e5.d() == 6);
    CHECK(e5.kappa == 5);
    // v6 carries lambda_B = 1/3 + 1/4
    bool seen = false;
    for (std::size_t s = 0; s < e5.d(); ++s) seen = seen || std::abs(e5.lambda[s][1] - Complex(7.0 / 12)) < 1e-9;
    CHECK(seen);
}

TEST_CASE("lc_membership") {
    const auto c2 = example_collection(2);
    const auto ces = common_eigenvectors(c2);
    const Vector x12{2, 0, 2, 0, 0, 0};
    const auto a = lc_membership(x12, ces);
    REQUIRE(a);
    CHECK(a->residual < 1e-10);
    // reconstructs x and only touches the modulus-one part
    CVector sum(6);
    for (std::size_t s = 0; s < ces.d(); ++s) {
        for (std::size_t i = 0; i < 6; ++i) sum[i] += a->alphas[s] * ces.vectors[s][i];
        if (s >= ces.kappa) CHECK(std::abs(a->alphas[s]) < 1e-10);
    }
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(sum[i] - x12[i]) < 1e-10);

    const Vector x34{2, 0, -2, 0, 0, 0};
    const auto b = lc_membership(x34, ces);
    REQUIRE(b);
    for (const auto& [s1, s2] : ces.s2_pairs) CHECK(std::abs(b->alphas[s1] - std::conj(b->alphas[s2])) < 1e-10);

    const auto c4 = example_collection(4);
    const auto e4 = common_eigenvectors(c4);
    const Vector e5{0, 0, 0, 0, 1, 0};
    CHECK_FALSE(lc_membership(e5, e4));
    CHECK(oracle::least_squares_residual({e4.vectors.begin(), e4.vectors.end()}, e5) > 0.5);
}

TEST_CASE("collection validation") {
    CHECK_THROWS_AS(MatrixCollection(std::vector<Matrix>{}), Error);
    CHECK_THROWS_AS(MatrixCollection(std::vector<Matrix>{Matrix::identity(2), Matrix::identity(3)}), Error);
    CHECK_THROWS_AS(MatrixCollection({"A", "A"}, {Matrix::identity(2), Matrix::identity(2)}), Error);
    const MatrixCollection c(std::vector<Matrix>{Matrix::identity(2), Matrix::identity(2)});
    CHECK(c.names() == std::vector<std::string>{"A", "B"});
    CHECK(c.index_of("B") == 1u);
    CHECK(pairwise_commuting(c));
    CHECK(all_diagonalizable(c));
    CHECK_FALSE(all_diagonalizable(MatrixCollection(std::vector<Matrix>{Matrix{{1, 1}, {0, 1}}})));
}
