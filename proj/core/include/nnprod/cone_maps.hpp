#pragma once

#include <nnprod/word_dynamics.hpp>

#include <span>
#include <vector>

namespace nnprod {

/// Componentwise log; throws BoundaryPoint at a zero coordinate and
/// InvalidInput at a negative one.
Vector log_map(std::span<const double> y);
Vector exp_map(std::span<const double> x);

/// f = exp o A o log for a nonnegative A.
struct ConeMap {
    Matrix matrix;
    Vector row_sums;

    /// Throws InvalidInput unless A is square, finite and nonnegative.
    static ConeMap from(Matrix a);
};

struct ConeValue {
    Vector y;
    /// Input had a zero coordinate, so the monomial form was used.
    bool boundary = false;
    /// Some coordinate underflowed to the subnormal range and was set to 0.
    bool flushed = false;
};

/// Interior points go through exp(A log y); points with zeros use the
/// monomial form with x^0 = 1 and 0^a = 0 for a > 0.
ConeValue cone_apply(const ConeMap& map, std::span<const double> y);
/// prod_j y_j^{a_ij} evaluated directly, for any y >= 0.
ConeValue cone_apply_monomial(const ConeMap& map, std::span<const double> y);

struct ConeLimitResult {
    Vector eta;
    /// exp of the linear limit of log y.
    Vector eta_linear;
    LimitStatus status = LimitStatus::MaxIter;
    unsigned long long iterations = 0;
    double residual = 0.0;
    /// max_i |eta_i - eta_linear_i| / max(|eta_i|, |eta_linear_i|).
    double path_gap = 0.0;
    bool paths_agree = false;
};

/// Limit of f_w^{kq}(y). The first path iterates the monomial form of
/// f_{A_w^q}; the second exponentiates limit_point(A_w, log y, q).
ConeLimitResult cone_limit(const MatrixCollection& collection, const Word& word, std::span<const double> y,
                           unsigned long long q, const LimitOptions& opts = {}, double agree_tol = 1e-8);

struct HomogeneityReport {
    /// f(t x)_i = t^{s_i} f(x)_i with s_i the i-th row sum.
    Vector exponents;
    bool subhomogeneous_certified = false;
    bool homogeneous_degree_one = false;
};

HomogeneityReport homogeneity_report(const ConeMap& map);

} // namespace nnprod
