#include <nnprod/cone_maps.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nnprod {

Vector log_map(std::span<const double> y) {
    Vector out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) throw Error(ErrorCode::BoundaryPoint, "log_map: coordinate " + std::to_string(i + 1) + " is zero");
        if (!(y[i] > 0.0)) throw Error(ErrorCode::InvalidInput, "log_map: coordinate " + std::to_string(i + 1) + " is negative");
        out[i] = std::log(y[i]);
    }
    return out;
}

Vector exp_map(std::span<const double> x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(x[i]);
    return out;
}

ConeMap ConeMap::from(Matrix a) {
    if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "cone map needs a square matrix");
    if (!is_finite(a) || !is_nonnegative(a)) throw Error(ErrorCode::InvalidInput, "cone map needs a nonnegative matrix");
    ConeMap m;
    m.row_sums.assign(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.row_sums[i] += a(i, j);
    }
    m.matrix = std::move(a);
    return m;
}

namespace {

void check_point(const ConeMap& map, std::span<const double> y) {
    if (y.size() != map.matrix.cols()) throw Error(ErrorCode::DimensionMismatch, "cone map: point length differs");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] >= 0.0) || !std::isfinite(y[i])) {
            throw Error(ErrorCode::InvalidInput, "cone map: coordinate " + std::to_string(i + 1) + " is not in [0, inf)");
        }
    }
}

bool flush(double& v) {
    if (v != 0.0 && v < std::numeric_limits<double>::min()) {
        v = 0.0;
        return true;
    }
    return false;
}

} // namespace

ConeValue cone_apply_monomial(const ConeMap& map, std::span<const double> y) {
    check_point(map, y);
    const Matrix& a = map.matrix;
    ConeValue out;
    out.y.assign(a.rows(), 1.0);
    out.boundary = std::any_of(y.begin(), y.end(), [](double v) { return v == 0.0; });
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double e = a(i, j);
            if (e == 0.0) continue;
            if (y[j] == 0.0) {
                prod = 0.0;
                break;
            }
            prod *= std::pow(y[j], e);
        }
        out.y[i] = prod;
        out.flushed = flush(out.y[i]) || out.flushed;
    }
    return out;
}

ConeValue cone_apply(const ConeMap& map, std::span<const double> y) {
    check_point(map, y);
    if (std::any_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) return cone_apply_monomial(map, y);
    ConeValue out;
    out.y = exp_map(mat_vec<double>(map.matrix, log_map(y)));
    for (auto& v : out.y) out.flushed = flush(v) || out.flushed;
    return out;
}

ConeLimitResult cone_limit(const MatrixCollection& collection, const Word& word, std::span<const double> y,
                           unsigned long long q, const LimitOptions& opts, double agree_tol) {
    const Matrix m = word_product(collection, word);
    const Vector logy = log_map(y);
    const ConeMap fq = ConeMap::from(matrix_power(m, q));

    ConeLimitResult out;
    const LimitResult lin = limit_point(m, logy, q, opts);
    if (lin.status == LimitStatus::Converged) out.eta_linear = exp_map(lin.xi);

    Vector z(y.begin(), y.end());
    for (unsigned long long k = 0; k < opts.max_iter; ++k) {
        ConeValue next = cone_apply_monomial(fq, z);
        ++out.iterations;
        const double nz = norm_inf<double>(next.y);
        if (!(nz <= opts.bound)) {
            out.status = LimitStatus::Diverged;
            z = std::move(next.y);
            break;
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) diff = std::max(diff, std::abs(next.y[i] - z[i]));
        out.residual = diff;
        const bool done = diff <= opts.tol * (1.0 + norm_inf<double>(z));
        z = std::move(next.y);
        if (done) {
            out.status = LimitStatus::Converged;
            break;
        }
    }
    out.eta = std::move(z);

    if (out.status == LimitStatus::Converged && lin.status == LimitStatus::Converged) {
        double gap = 0.0;
        for (std::size_t i = 0; i < out.eta.size(); ++i) {
            const double scale = std::max({std::abs(out.eta[i]), std::abs(out.eta_linear[i]), 1e-300});
            gap = std::max(gap, std::abs(out.eta[i] - out.eta_linear[i]) / scale);
        }
        out.path_gap = gap;
        out.paths_agree = gap <= agree_tol;
    }
    return out;
}

HomogeneityReport homogeneity_report(const ConeMap& map) {
    HomogeneityReport rep;
    rep.exponents = map.row_sums;
    rep.subhomogeneous_certified =
        std::all_of(rep.exponents.begin(), rep.exponents.end(), [](double s) { return s <= 1.0 + 1e-12; });
    rep.homogeneous_degree_one =
        std::all_of(rep.exponents.begin(), rep.exponents.end(), [](double s) { return std::abs(s - 1.0) <= 1e-12; });
    return rep;
}

} // namespace nnprod
