#include <nnprod/structure.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace nnprod {

namespace {

std::string default_name(std::size_t i, std::size_t n) {
    if (n <= 26) return std::string(1, static_cast<char>('A' + i));
    return "A" + std::to_string(i + 1);
}

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(default_name(i, n));
    return names;
}

} // namespace

MatrixCollection::MatrixCollection(std::vector<std::string> names, std::vector<Matrix> matrices)
    : names_(std::move(names)), matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw Error(ErrorCode::InvalidInput, "a collection needs at least one matrix");
    if (names_.size() != matrices_.size()) throw Error(ErrorCode::InvalidInput, "one name per matrix is required");
    const std::size_t n = matrices_.front().rows();
    if (n == 0) throw Error(ErrorCode::InvalidInput, "matrices must have positive dimension");
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
        const Matrix& m = matrices_[i];
        if (!m.is_square() || m.rows() != n) {
            throw Error(ErrorCode::DimensionMismatch, "matrix '" + names_[i] + "' is not " + std::to_string(n) + "x" +
                                                          std::to_string(n));
        }
        if (!is_finite(m)) throw Error(ErrorCode::InvalidInput, "matrix '" + names_[i] + "' has non-finite entries");
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) throw Error(ErrorCode::InvalidInput, "empty matrix name");
        if (!seen.insert(name).second) throw Error(ErrorCode::InvalidInput, "duplicate matrix name '" + name + "'");
    }
}

MatrixCollection::MatrixCollection(std::vector<Matrix> matrices) {
    auto names = default_names(matrices.size());
    *this = MatrixCollection(std::move(names), std::move(matrices));
}

std::optional<Letter> MatrixCollection::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Letter>(it - names_.begin());
}

bool MatrixCollection::nonnegative() const noexcept {
    return std::all_of(matrices_.begin(), matrices_.end(), [](const Matrix& m) { return is_nonnegative(m); });
}

std::vector<double> MatrixCollection::spectral_radii() const {
    std::vector<double> rho;
    rho.reserve(matrices_.size());
    for (const auto& m : matrices_) rho.push_back(spectral_radius(m));
    return rho;
}

MatrixCollection::Validation MatrixCollection::validation(double rho_tol) const {
    Validation v;
    v.rho = spectral_radii();
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
        const bool nn = is_nonnegative(matrices_[i]);
        v.nonnegative_each.push_back(nn);
        v.nonnegative = v.nonnegative && nn;
        const bool ok = std::abs(v.rho[i] - 1.0) <= rho_tol;
        v.rho_ok.push_back(ok);
        v.all_rho_ok = v.all_rho_ok && ok;
    }
    return v;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return sub(mat_mul(a, b), mat_mul(b, a)); }

Matrix shemesh_subspace(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || !a.is_square() || !b.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "shemesh_subspace: shapes differ");
    }
    const std::size_t n = a.rows();
    std::vector<Matrix> blocks;
    Matrix ak = a;
    for (std::size_t k = 1; k <= n - 1; ++k) {
        Matrix bl = b;
        for (std::size_t l = 1; l <= n - 1; ++l) {
            blocks.push_back(commutator(ak, bl));
            if (l + 1 <= n - 1) bl = mat_mul(bl, b);
        }
        if (k + 1 <= n - 1) ak = mat_mul(ak, a);
    }
    if (blocks.empty()) return Matrix::identity(n);
    const Matrix stacked = vstack<double>(std::span<const Matrix>(blocks));
    return rank_and_nullspace(stacked, tol).nullspace;
}

PairClassification classify_pair(const Matrix& a, const Matrix& b, double tol) {
    PairClassification pc;
    const Matrix c = commutator(a, b);
    pc.commuting = max_abs(c) <= tol;
    pc.quasi_commuting = pc.commuting || (max_abs(commutator(a, c)) <= tol && max_abs(commutator(b, c)) <= tol);
    pc.commutator_rank = rank_and_nullspace(c, tol).rank;
    pc.laffey = pc.commutator_rank == 1;
    pc.shemesh_dimension = shemesh_subspace(a, b, tol).cols();
    return pc;
}

QuasiCommutingResult is_quasi_commuting(const MatrixCollection& collection, double tol) {
    QuasiCommutingResult out;
    for (Letter r = 0; r < collection.size(); ++r) {
        for (Letter s = r + 1; s < collection.size(); ++s) {
            const Matrix c = commutator(collection[r], collection[s]);
            for (Letter who : {r, s}) {
                const double nrm = max_abs(commutator(collection[who], c));
                if (nrm > tol) {
                    out.quasi_commuting = false;
                    out.witness = QuasiCommutingWitness{r, s, who, nrm};
                    return out;
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Common eigenvectors

namespace {

struct Subspace {
    ComplexMatrix basis; // n x k, orthonormal columns
    std::vector<Complex> row;
};

double arg_0_2pi(Complex z) {
    if (z.imag() == 0.0) return z.real() >= 0.0 ? 0.0 : std::numbers::pi;
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

// Distinct eigenvalues of one matrix, from the clustered decomposition.
std::vector<Complex> distinct_eigenvalues(const EigenDecomposition& ed) {
    std::vector<Complex> out;
    for (const auto& z : ed.eigenvalues) {
        if (out.empty() || out.back() != z) out.push_back(z);
    }
    return out;
}

std::vector<Subspace> seed_subspaces(const EigenDecomposition& ed, std::size_t n) {
    std::vector<Subspace> out;
    std::size_t i = 0;
    while (i < ed.pairs.size()) {
        std::size_t j = i;
        while (j < ed.pairs.size() && ed.pairs[j].eigenvalue == ed.pairs[i].eigenvalue) ++j;
        Subspace s;
        s.basis = ComplexMatrix(n, j - i);
        for (std::size_t k = i; k < j; ++k) s.basis.set_col(k - i, ed.pairs[k].eigenvector);
        s.row.push_back(ed.pairs[i].eigenvalue);
        out.push_back(std::move(s));
        i = j;
    }
    return out;
}

std::vector<Subspace> refine(std::vector<Subspace> spaces, const ComplexMatrix& a, const std::vector<Complex>& mus,
                             double tol) {
    std::vector<Subspace> next;
    for (const auto& sp : spaces) {
        const ComplexMatrix aq = mat_mul(a, sp.basis);
        for (const Complex mu : mus) {
            ComplexMatrix m = aq;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= mu * sp.basis(i, j);
            }
            const auto rn = rank_and_nullspace(m, tol);
            if (rn.nullspace.cols() == 0) continue;
            Subspace child;
            child.basis = mat_mul(sp.basis, rn.nullspace);
            child.row = sp.row;
            child.row.push_back(mu);
            next.push_back(std::move(child));
        }
    }
    return next;
}

bool row_is_real(const std::vector<Complex>& row) {
    return std::all_of(row.begin(), row.end(), [](Complex z) { return z.imag() == 0.0; });
}

// Real orthonormal basis of a conjugation-invariant subspace.
ComplexMatrix realify(const ComplexMatrix& basis) {
    const std::size_t n = basis.rows();
    const std::size_t k = basis.cols();
    Matrix parts(n, 2 * k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            parts(i, j) = basis(i, j).real();
            parts(i, k + j) = basis(i, j).imag();
        }
    }
    const auto s = svd(parts);
    ComplexMatrix out(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) out(i, j) = s.left(i, j);
    }
    return out;
}

// Orientation used to pick which member of a conjugate pair is primary.
bool upper_half(const std::vector<Complex>& row) {
    for (const auto& z : row) {
        if (z.imag() != 0.0) return z.imag() > 0.0;
    }
    return false;
}

bool is_conj_row(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != std::conj(y[i])) return false;
    }
    return true;
}

CommonEigenSystem assemble(std::vector<Subspace> spaces, bool real_input, const StructureOptions& opts) {
    if (real_input) {
        for (auto& sp : spaces) {
            if (row_is_real(sp.row)) sp.basis = realify(sp.basis);
        }
        for (std::size_t i = 0; i < spaces.size(); ++i) {
            if (row_is_real(spaces[i].row) || !upper_half(spaces[i].row)) continue;
            for (std::size_t j = 0; j < spaces.size(); ++j) {
                if (j == i || !is_conj_row(spaces[j].row, spaces[i].row)) continue;
                if (spaces[j].basis.cols() != spaces[i].basis.cols()) continue;
                ComplexMatrix c = spaces[i].basis;
                for (auto& z : c.data()) z = std::conj(z);
                spaces[j].basis = std::move(c);
                break;
            }
        }
    }

    auto unit_row = [&](const std::vector<Complex>& row) {
        return std::all_of(row.begin(), row.end(),
                           [&](Complex z) { return std::abs(std::abs(z) - 1.0) <= opts.modulus_tol; });
    };
    auto min_modulus = [](const std::vector<Complex>& row) {
        double m = std::abs(row.front());
        for (const auto& z : row) m = std::min(m, std::abs(z));
        return m;
    };
    auto arg_less = [&](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto ax = std::llround(arg_0_2pi(x[i]) / opts.modulus_tol);
            const auto ay = std::llround(arg_0_2pi(y[i]) / opts.modulus_tol);
            if (ax != ay) return ax < ay;
        }
        return false;
    };
    std::stable_sort(spaces.begin(), spaces.end(), [&](const Subspace& x, const Subspace& y) {
        const bool ux = unit_row(x.row);
        const bool uy = unit_row(y.row);
        if (ux != uy) return ux;
        if (!ux) {
            const auto mx = std::llround(min_modulus(x.row) / opts.modulus_tol);
            const auto my = std::llround(min_modulus(y.row) / opts.modulus_tol);
            if (mx != my) return mx > my;
        }
        return arg_less(x.row, y.row);
    });

    CommonEigenSystem sys;
    std::vector<std::size_t> first_index(spaces.size());
    for (std::size_t g = 0; g < spaces.size(); ++g) {
        const auto& sp = spaces[g];
        first_index[g] = sys.vectors.size();
        for (std::size_t j = 0; j < sp.basis.cols(); ++j) {
            sys.vectors.push_back(phase_canonicalize(sp.basis.col(j)));
            sys.lambda.push_back(sp.row);
            sys.group.push_back(g);
        }
        if (unit_row(sp.row)) sys.kappa += sp.basis.cols();
    }

    if (real_input) {
        // Conjugate partners become literal conjugates after canonicalization.
        for (std::size_t g = 0; g < spaces.size(); ++g) {
            if (row_is_real(spaces[g].row) || !upper_half(spaces[g].row)) continue;
            for (std::size_t h = 0; h < spaces.size(); ++h) {
                if (h == g || !is_conj_row(spaces[h].row, spaces[g].row)) continue;
                if (spaces[h].basis.cols() != spaces[g].basis.cols()) continue;
                for (std::size_t j = 0; j < spaces[g].basis.cols(); ++j) {
                    CVector c = sys.vectors[first_index[g] + j];
                    for (auto& z : c) z = std::conj(z);
                    sys.vectors[first_index[h] + j] = std::move(c);
                }
                break;
            }
        }
    }

    for (std::size_t s1 = 0; s1 < sys.vectors.size(); ++s1) {
        const CVector& v = sys.vectors[s1];
        const bool real_vec =
            std::all_of(v.begin(), v.end(), [&](Complex z) { return std::abs(z.imag()) <= opts.conjugate_tol; });
        if (real_vec) continue;
        for (std::size_t s2 = s1 + 1; s2 < sys.vectors.size(); ++s2) {
            const CVector& w = sys.vectors[s2];
            double diff = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(v[i] - std::conj(w[i])));
            if (diff <= opts.conjugate_tol) {
                sys.s2_pairs.emplace_back(s1, s2);
                break;
            }
        }
    }
    return sys;
}

} // namespace

std::optional<std::size_t> CommonEigenSystem::conjugate_of(std::size_t s) const {
    for (const auto& [a, b] : s2_pairs) {
        if (a == s) return b;
        if (b == s) return a;
    }
    return std::nullopt;
}

CommonEigenSystem common_eigenvectors(const MatrixCollection& collection, const StructureOptions& opts) {
    const std::size_t n = collection.dimension();
    std::vector<Subspace> spaces = seed_subspaces(eigendecompose(collection[0], opts.spectral), n);
    for (Letter r = 1; r < collection.size() && !spaces.empty(); ++r) {
        const auto mus = distinct_eigenvalues(eigendecompose(collection[r], opts.spectral));
        const double tol = opts.tol * std::max(1.0, operator_norm(collection[r]));
        spaces = refine(std::move(spaces), to_complex(collection[r]), mus, tol);
    }
    return assemble(std::move(spaces), true, opts);
}

CommonEigenSystem common_eigenvectors(const std::vector<ComplexMatrix>& family, const StructureOptions& opts) {
    if (family.empty()) return {};
    const std::size_t n = family.front().rows();
    std::vector<Subspace> spaces = seed_subspaces(eigendecompose(family[0], opts.spectral), n);
    for (std::size_t r = 1; r < family.size() && !spaces.empty(); ++r) {
        const auto mus = distinct_eigenvalues(eigendecompose(family[r], opts.spectral));
        const double tol = opts.tol * std::max(1.0, operator_norm(family[r]));
        spaces = refine(std::move(spaces), family[r], mus, tol);
    }
    return assemble(std::move(spaces), false, opts);
}

std::optional<ComplexMatrix> simultaneous_triangularization(const MatrixCollection& collection,
                                                            const StructureOptions& opts) {
    const std::size_t n = collection.dimension();
    ComplexMatrix u = ComplexMatrix::identity(n);
    std::vector<ComplexMatrix> family;
    for (const auto& m : collection.matrices()) family.push_back(to_complex(m));

    for (std::size_t offset = 0; offset + 1 < n; ++offset) {
        const std::size_t k = n - offset;
        const CommonEigenSystem ces = common_eigenvectors(family, opts);
        if (ces.empty()) return std::nullopt;
        const CVector& v = ces.vectors.front();

        // W = [v | orthonormal complement of v]
        ComplexMatrix vh(1, k);
        for (std::size_t i = 0; i < k; ++i) vh(0, i) = std::conj(v[i]);
        const ComplexMatrix comp = rank_and_nullspace(vh).nullspace;
        ComplexMatrix w(k, k);
        w.set_col(0, v);
        for (std::size_t j = 0; j + 1 < k; ++j) {
            for (std::size_t i = 0; i < k; ++i) w(i, j + 1) = comp(i, j);
        }

        for (auto& f : family) {
            const ComplexMatrix t = mat_mul(adjoint(w), mat_mul(f, w));
            ComplexMatrix lower(k - 1, k - 1);
            for (std::size_t i = 1; i < k; ++i) {
                for (std::size_t j = 1; j < k; ++j) lower(i - 1, j - 1) = t(i, j);
            }
            f = std::move(lower);
        }

        // u[:, offset:] <- u[:, offset:] * w
        ComplexMatrix tail(n, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) tail(i, j) = u(i, offset + j);
        }
        tail = mat_mul(tail, w);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) u(i, offset + j) = tail(i, j);
        }
    }

    for (const auto& a : collection.matrices()) {
        const ComplexMatrix t = mat_mul(adjoint(u), mat_mul(to_complex(a), u));
        const double bound = opts.tol * 10.0 * std::max(1.0, operator_norm(a));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (std::abs(t(i, j)) > bound) return std::nullopt;
            }
        }
    }
    return u;
}

std::optional<LCCoefficients> lc_membership(std::span<const double> x, const CommonEigenSystem& system, double tol) {
    if (system.empty()) return std::nullopt;
    const std::size_t n = system.dimension();
    const std::size_t d = system.d();
    if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "lc_membership: vector length differs");

    ComplexMatrix v(n, d);
    for (std::size_t s = 0; s < d; ++s) v.set_col(s, system.vectors[s]);
    // v * right = left * diag(sigma)  =>  alpha = right * diag(1/sigma) * left^H x
    const auto dec = svd(v);
    const double cutoff = 1e-12 * std::max(1.0, dec.singular.front());
    CVector proj(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (dec.singular[j] <= cutoff) continue;
        Complex acc{};
        for (std::size_t i = 0; i < n; ++i) acc += std::conj(dec.left(i, j)) * x[i];
        proj[j] = acc / dec.singular[j];
    }
    LCCoefficients out;
    out.alphas.assign(d, Complex{});
    for (std::size_t s = 0; s < d; ++s) {
        Complex acc{};
        for (std::size_t j = 0; j < d; ++j) acc += dec.right(s, j) * proj[j];
        out.alphas[s] = acc;
    }

    const double scale = 1.0 + norm2<double>(x);
    const double bound = tol * scale;
    for (std::size_t s = 0; s < d; ++s) {
        if (const auto partner = system.conjugate_of(s)) {
            if (std::abs(out.alphas[s] - std::conj(out.alphas[*partner])) > bound) return std::nullopt;
        } else if (std::abs(out.alphas[s].imag()) > bound) {
            return std::nullopt;
        }
    }
    // Enforce the constraints exactly so downstream combinations are real.
    for (std::size_t s = 0; s < d; ++s) {
        if (const auto partner = system.conjugate_of(s)) {
            if (*partner > s) {
                const Complex avg = 0.5 * (out.alphas[s] + std::conj(out.alphas[*partner]));
                out.alphas[s] = avg;
                out.alphas[*partner] = std::conj(avg);
            }
        } else {
            out.alphas[s] = Complex(out.alphas[s].real(), 0.0);
        }
    }

    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::size_t s = 0; s < d; ++s) acc += out.alphas[s] * system.vectors[s][i];
        res += std::norm(acc - x[i]);
    }
    out.residual = std::sqrt(res);
    if (out.residual > bound) return std::nullopt;
    return out;
}

bool all_diagonalizable(const MatrixCollection& collection, const SpectralOptions& opts) {
    return std::none_of(collection.matrices().begin(), collection.matrices().end(),
                        [&](const Matrix& m) { return eigendecompose(m, opts).defective(); });
}

bool pairwise_commuting(const MatrixCollection& collection, double tol) {
    for (Letter r = 0; r < collection.size(); ++r) {
        for (Letter s = r + 1; s < collection.size(); ++s) {
            if (max_abs(commutator(collection[r], collection[s])) > tol) return false;
        }
    }
    return true;
}

} // namespace nnprod
