#pragma once

#include <algorithm>
#include <cmath>

namespace nnprod {

template <typename T>
Dense<T>::Dense(std::size_t rows, std::size_t cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw Error(ErrorCode::DimensionMismatch, "matrix data length does not match its shape");
    }
}

template <typename T>
Dense<T>::Dense(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

template <typename T>
Dense<T> Dense<T>::identity(std::size_t n) {
    Dense m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
}

template <typename T>
std::vector<T> Dense<T>::col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

template <typename T>
void Dense<T>::set_col(std::size_t j, std::span<const T> v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

template <typename T>
Dense<T> mat_mul(const Dense<T>& a, const Dense<T>& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "mat_mul: inner dimensions differ");
    }
    Dense<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T acc{};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

template <typename T>
std::vector<T> mat_vec(const Dense<T>& a, std::span<const T> x) {
    if (a.cols() != x.size()) {
        throw Error(ErrorCode::DimensionMismatch, "mat_vec: dimension mismatch");
    }
    std::vector<T> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc{};
        for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * x[k];
        y[i] = acc;
    }
    return y;
}

template <typename T>
Dense<T> add(const Dense<T>& a, const Dense<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "add: shape mismatch");
    }
    Dense<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
    return c;
}

template <typename T>
Dense<T> sub(const Dense<T>& a, const Dense<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "sub: shape mismatch");
    }
    Dense<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

template <typename T>
Dense<T> scale(const Dense<T>& a, T s) {
    Dense<T> c = a;
    for (auto& v : c.data()) v *= s;
    return c;
}

template <typename T>
Dense<T> adjoint(const Dense<T>& a) {
    Dense<T> c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if constexpr (is_complex_v<T>) {
                c(j, i) = std::conj(a(i, j));
            } else {
                c(j, i) = a(i, j);
            }
        }
    }
    return c;
}

template <typename T>
Dense<T> matrix_power(const Dense<T>& a, unsigned long long k) {
    if (!a.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix_power: matrix is not square");
    }
    Dense<T> result = Dense<T>::identity(a.rows());
    Dense<T> base = a;
    while (k > 0) {
        if (k & 1ULL) result = mat_mul(base, result);
        k >>= 1;
        if (k > 0) base = mat_mul(base, base);
    }
    return result;
}

template <typename T>
Dense<T> vstack(std::span<const Dense<T>> blocks) {
    if (blocks.empty()) return {};
    const std::size_t cols = blocks.front().cols();
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw Error(ErrorCode::DimensionMismatch, "vstack: column counts differ");
        rows += b.rows();
    }
    std::vector<T> data;
    data.reserve(rows * cols);
    for (const auto& b : blocks) data.insert(data.end(), b.data().begin(), b.data().end());
    return Dense<T>(rows, cols, std::move(data));
}

template <typename T>
double max_abs(const Dense<T>& a) noexcept {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
}

template <typename T>
double norm_inf(std::span<const T> x) noexcept {
    double m = 0.0;
    for (const auto& v : x) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
}

template <typename T>
double norm2(std::span<const T> x) noexcept {
    double acc = 0.0;
    for (const auto& v : x) acc += std::norm(v);
    return std::sqrt(acc);
}

} // namespace nnprod
