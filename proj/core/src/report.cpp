#include <nnprod/report.hpp>

#include <nnprod/cone_maps.hpp>
#include <nnprod/corpus.hpp>
#include <nnprod/infinite_words.hpp>
#include <nnprod/word_dynamics.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nnprod {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Input

double entry_value(const json& e, const std::string& where) {
    double v = 0.0;
    if (e.is_number()) {
        v = e.get<double>();
    } else if (e.is_string()) {
        try {
            v = parse_entry(e.get<std::string>());
        } catch (const Error&) {
            throw Error(ErrorCode::InvalidInput, where + ": cannot parse '" + e.get<std::string>() + "'");
        }
    } else {
        throw Error(ErrorCode::InvalidInput, where + ": entry must be a number or a string");
    }
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, where + ": entry is not finite");
    if (v < 0.0) throw Error(ErrorCode::InvalidInput, where + ": negative entry " + e.dump());
    return v;
}

bool valid_name(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace

CollectionSpec parse_collection_spec(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed input document: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "input document must be an object");

    CollectionSpec spec;
    if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned() || doc["dimension"].get<std::size_t>() == 0) {
        throw Error(ErrorCode::InvalidInput, "'dimension' must be a positive integer");
    }
    spec.dimension = doc["dimension"].get<std::size_t>();
    if (!doc.contains("matrices") || !doc["matrices"].is_object() || doc["matrices"].empty()) {
        throw Error(ErrorCode::InvalidInput, "'matrices' must be a nonempty object of named matrices");
    }
    const std::size_t n = spec.dimension;
    for (const auto& [name, rows] : doc["matrices"].items()) {
        if (!valid_name(name)) throw Error(ErrorCode::InvalidInput, "matrix name '" + name + "' is not a single token");
        const std::string base = "matrices." + name;
        if (!rows.is_array() || rows.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, base + ": expected " + std::to_string(n) + " rows");
        }
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const json& row = rows[i];
            if (!row.is_array() || row.size() != n) {
                throw Error(ErrorCode::DimensionMismatch,
                            base + "[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
            }
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = entry_value(row[j], base + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
            }
        }
        spec.names.push_back(name);
        spec.matrices.push_back(std::move(m));
    }
    if (doc.contains("options")) {
        const json& o = doc["options"];
        if (!o.is_object()) throw Error(ErrorCode::InvalidInput, "'options' must be an object");
        auto positive = [&](const char* key) -> std::optional<double> {
            if (!o.contains(key)) return std::nullopt;
            const double v = entry_value(o[key], std::string("options.") + key);
            if (!(v > 0.0)) throw Error(ErrorCode::InvalidInput, std::string("options.") + key + " must be positive");
            return v;
        };
        spec.rho_tol = positive("rho_tol");
        spec.tol = positive("tol");
        if (o.contains("max_iter")) {
            if (!o["max_iter"].is_number_unsigned() || o["max_iter"].get<unsigned long long>() == 0) {
                throw Error(ErrorCode::InvalidInput, "options.max_iter must be a positive integer");
            }
            spec.max_iter = o["max_iter"].get<unsigned long long>();
        }
    }
    return spec;
}

Vector parse_vector(std::string_view text, std::size_t n) {
    Vector out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != ',') ++j;
        if (j > i) out.push_back(parse_entry(text.substr(i, j - i)));
        i = j;
    }
    if (out.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "vector has " + std::to_string(out.size()) + " entries, expected " + std::to_string(n));
    }
    return out;
}

Settings resolve_settings(const CollectionSpec& spec, std::optional<double> tol, std::optional<double> rho_tol,
                          std::optional<unsigned long long> max_iter, std::optional<double> bound, bool force) {
    Settings s;
    if (spec.tol) s.tol = *spec.tol;
    if (spec.rho_tol) s.rho_tol = *spec.rho_tol;
    if (spec.max_iter) s.max_iter = *spec.max_iter;
    if (tol) s.tol = *tol;
    if (rho_tol) s.rho_tol = *rho_tol;
    if (max_iter) s.max_iter = *max_iter;
    if (bound) s.bound = *bound;
    s.force = force;
    return s;
}

ValidationReport validate(const MatrixCollection& c, const Settings& settings) {
    ValidationReport rep;
    rep.matrices = c.validation(settings.rho_tol);
    const double tol = settings.structure.tol;
    bool all_commute = true;
    for (Letter r = 0; r < c.size(); ++r) {
        for (Letter s = r + 1; s < c.size(); ++s) {
            rep.pairs.push_back(PairEntry{r, s, classify_pair(c[r], c[s], tol)});
            all_commute = all_commute && rep.pairs.back().classification.commuting;
        }
    }
    rep.quasi = is_quasi_commuting(c, tol);

    bool structure_ok = true;
    if (c.size() == 1 || all_commute) {
        rep.structure = "commuting";
    } else if (rep.quasi.quasi_commuting) {
        rep.structure = "quasi-commuting";
    } else if (c.size() == 2 && rep.pairs.front().classification.laffey) {
        rep.structure = "laffey";
    } else if (c.size() == 2 && rep.pairs.front().classification.partially_commuting()) {
        rep.structure = "partially-commuting";
    } else {
        rep.structure = "none";
        structure_ok = false;
    }
    if (c.size() >= 3 && !rep.quasi.quasi_commuting) {
        structure_ok = false;
        rep.warnings.push_back("three or more matrices must be quasi-commuting");
    }
    for (Letter r = 0; r < c.size(); ++r) {
        if (!rep.matrices.nonnegative_each[r]) rep.warnings.push_back("matrix " + c.names()[r] + " has a negative entry");
        if (!rep.matrices.rho_ok[r]) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "rho(%s) = %.17g is not within rho_tol of 1", c.names()[r].c_str(),
                          rep.matrices.rho[r]);
            rep.warnings.push_back(buf);
        }
    }
    for (Letter r = 0; r < c.size(); ++r) {
        for (Letter s = 0; s < c.size(); ++s) {
            if (r == s) continue;
            const double rho = spectral_radius(mat_mul(c[s], c[r]));
            if (rho > 1.0 + settings.rho_tol) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "rho(A_w) = %.17g > 1 for w = %s%s (product %s*%s)", rho,
                              c.names()[r].c_str(), c.names()[s].c_str(), c.names()[s].c_str(), c.names()[r].c_str());
                rep.warnings.push_back(buf);
            }
        }
    }
    rep.hypotheses_met = rep.matrices.nonnegative && rep.matrices.all_rho_ok && structure_ok;
    return rep;
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidLetter:
    case ErrorCode::BoundaryPoint: return 2;
    case ErrorCode::HypothesesNotMet:
    case ErrorCode::SpectralRadiusViolation:
    case ErrorCode::Reducible: return 3;
    case ErrorCode::NotRootOfUnity:
    case ErrorCode::NotPeriodic:
    case ErrorCode::BudgetExhausted:
    case ErrorCode::ConvergenceFailure: return 4;
    }
    return 4;
}

namespace {

// ---------------------------------------------------------------------------
// Output

json cnum(Complex z) { return json::array({z.real(), z.imag()}); }

json cvec(const CVector& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(cnum(z));
    return a;
}

json rvec(std::span<const double> v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

bool is_scalar(const json& j) { return !j.is_array() && !j.is_object(); }

bool is_flat(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j) {
        if (is_scalar(e)) continue;
        if (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) { return is_scalar(x); }) && e.size() <= 2) {
            continue;
        }
        return false;
    }
    return true;
}

void dump_scalar(std::ostream& os, const json& j, const char* float_fmt) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            os << "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, float_fmt, v);
        std::string s = buf;
        // keep floats recognisable as floats on re-parse
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        os << s;
    } else {
        os << j.dump();
    }
}

void dump_inline(std::ostream& os, const json& j, const char* float_fmt) {
    if (is_scalar(j)) {
        dump_scalar(os, j, float_fmt);
        return;
    }
    os << '[';
    bool first = true;
    for (const auto& e : j) {
        if (!first) os << ", ";
        first = false;
        dump_inline(os, e, float_fmt);
    }
    os << ']';
}

void dump_machine(std::ostream& os, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (is_scalar(j) || is_flat(j) || j.empty()) {
        if (j.is_object()) {
            os << "{}";
        } else {
            dump_inline(os, j, "%.17g");
        }
        return;
    }
    if (j.is_array()) {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << inner;
            dump_machine(os, j[i], indent + 1);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        os << pad << ']';
        return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
        os << inner << json(k).dump() << ": ";
        dump_machine(os, v, indent + 1);
        os << (++i < j.size() ? ",\n" : "\n");
    }
    os << pad << '}';
}

std::string machine_text(const json& doc) {
    std::ostringstream os;
    dump_machine(os, doc, 0);
    os << '\n';
    return os.str();
}

void dump_human(std::ostream& os, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [k, v] : j.items()) {
        os << pad << k << ':';
        if (is_scalar(v) || is_flat(v) || v.empty()) {
            os << ' ';
            if (v.is_string()) {
                os << v.get<std::string>();
            } else {
                dump_inline(os, v, "%.10g");
            }
            os << '\n';
        } else if (v.is_object()) {
            os << '\n';
            dump_human(os, v, indent + 1);
        } else {
            os << '\n';
            for (const auto& e : v) {
                if (e.is_object()) {
                    os << pad << "  -\n";
                    dump_human(os, e, indent + 2);
                } else {
                    os << pad << "  - ";
                    dump_inline(os, e, "%.10g");
                    os << '\n';
                }
            }
        }
    }
}

std::string render(const json& doc, Format format) {
    if (format == Format::Machine) return machine_text(doc);
    std::ostringstream os;
    dump_human(os, doc, 0);
    return os.str();
}

json tolerances_json(const Settings& s) {
    return json{{"tol", s.tol},
                {"rho_tol", s.rho_tol},
                {"max_iter", s.max_iter},
                {"bound", s.bound},
                {"structure_tol", s.structure.tol},
                {"modulus_tol", s.structure.modulus_tol},
                {"conjugate_tol", s.structure.conjugate_tol},
                {"cluster_rel", s.structure.spectral.cluster_rel},
                {"force", s.force}};
}

json validation_json(const MatrixCollection& c, const ValidationReport& v) {
    json per = json::array();
    for (Letter r = 0; r < c.size(); ++r) {
        per.push_back(json{{"name", c.names()[r]},
                           {"nonnegative", static_cast<bool>(v.matrices.nonnegative_each[r])},
                           {"rho", v.matrices.rho[r]},
                           {"rho_ok", static_cast<bool>(v.matrices.rho_ok[r])}});
    }
    json pairs = json::array();
    for (const auto& p : v.pairs) {
        const auto& k = p.classification;
        pairs.push_back(json{{"pair", json::array({c.names()[p.r], c.names()[p.s]})},
                             {"commuting", k.commuting},
                             {"quasi_commuting", k.quasi_commuting},
                             {"laffey", k.laffey},
                             {"partially_commuting", k.partially_commuting()},
                             {"shemesh_dimension", k.shemesh_dimension},
                             {"commutator_rank", k.commutator_rank}});
    }
    json quasi{{"quasi_commuting", v.quasi.quasi_commuting}};
    if (v.quasi.witness) {
        const auto& w = *v.quasi.witness;
        quasi["witness"] = json{{"pair", json::array({c.names()[w.r], c.names()[w.s]})},
                                {"offender", c.names()[w.offender]},
                                {"norm", w.norm}};
    }
    return json{{"matrices", per},
                {"pair_classifications", pairs},
                {"quasi_commuting", quasi},
                {"structure", v.structure},
                {"verdict", v.hypotheses_met ? "ok" : "HypothesesNotMet"},
                {"warnings", v.warnings}};
}

json eigensystem_json(const MatrixCollection& c, const CommonEigenSystem& ces) {
    json vectors = json::array();
    json table = json::array();
    for (std::size_t s = 0; s < ces.d(); ++s) {
        vectors.push_back(cvec(ces.vectors[s]));
        json row = json::object();
        for (Letter r = 0; r < c.size(); ++r) row[c.names()[r]] = cnum(ces.lambda[s][r]);
        table.push_back(row);
    }
    json pairs = json::array();
    for (const auto& [a, b] : ces.s2_pairs) pairs.push_back(json::array({a + 1, b + 1}));
    return json{{"d", ces.d()}, {"kappa", ces.kappa}, {"vectors", vectors}, {"eigenvalues", table}, {"s2_pairs", pairs}};
}

json period_json(const MatrixCollection& c, const PeriodCertificate& pc) {
    json qr = json::object();
    for (std::size_t i = 0; i < pc.letters.size(); ++i) qr[c.names()[pc.letters[i]]] = pc.q_r[i];
    return json{{"q_r", qr}, {"q", pc.q}};
}

json limit_json(const LimitResult& r) {
    return json{{"status", to_string(r.status)}, {"iterations", r.iterations}, {"residual", r.residual}, {"xi", rvec(r.xi)}};
}

PeriodOptions period_options(const Settings& s) {
    PeriodOptions o;
    o.rho_tol = s.rho_tol;
    o.peripheral.rho_tol = s.rho_tol;
    o.peripheral.spectral = s.structure.spectral;
    return o;
}

LimitOptions limit_options(const Settings& s) { return LimitOptions{s.tol, s.max_iter, s.bound}; }

struct QueryResult {
    json fragment;
    int exit_code = 0;
    std::string diagnostic;
};

double period_tol(const Settings& s) { return std::max(1e-8, 100.0 * s.tol); }

QueryResult query_limit(const MatrixCollection& c, const Query& q, const Settings& s) {
    const Word w = parse_word(c, q.word);
    const Vector x = parse_vector(q.vector_text, c.dimension());
    const PeriodCertificate pc = word_period(c, w, period_options(s));
    const Matrix m = word_product(c, w);
    const LimitResult lim = limit_point(m, x, pc.q, limit_options(s));

    QueryResult out;
    json f{{"kind", "limit"},
           {"word", word_to_string(c, w)},
           {"factor_order", factor_order(c, w)},
           {"x", rvec(x)},
           {"period_certificate", period_json(c, pc)},
           {"limit", limit_json(lim)}};
    if (lim.status != LimitStatus::Converged) {
        out.exit_code = 4;
        out.diagnostic = "limit did not converge (" + std::string(to_string(lim.status)) + ")";
    } else {
        try {
            f["period"] = point_period(m, lim.xi, pc.q, period_tol(s));
        } catch (const Error& e) {
            f["period"] = nullptr;
        }
        try {
            f["common_period"] = common_period(c, lim.xi, global_period(c, period_options(s)).q, period_tol(s));
        } catch (const Error&) {
            f["common_period"] = nullptr;
        }
    }
    const CommonEigenSystem ces = common_eigenvectors(c, s.structure);
    json lc{{"member", false}};
    if (!ces.empty()) {
        if (const auto coeffs = lc_membership(x, ces)) {
            lc["member"] = true;
            lc["alphas"] = cvec(coeffs->alphas);
            const Vector sl = spectral_limit(ces, *coeffs, w, c.size(), s.structure.modulus_tol);
            lc["spectral_limit"] = rvec(sl);
            if (lim.status == LimitStatus::Converged) {
                double gap = 0.0;
                for (std::size_t i = 0; i < sl.size(); ++i) gap = std::max(gap, std::abs(sl[i] - lim.xi[i]));
                lc["spectral_gap"] = gap;
            }
        }
    }
    f["lc_membership"] = lc;
    out.fragment = std::move(f);
    return out;
}

QueryResult query_period(const MatrixCollection& c, const Query& q, const Settings& s) {
    const Word w = parse_word(c, q.word);
    const Vector x = parse_vector(q.vector_text, c.dimension());
    const PeriodCertificate pc = word_period(c, w, period_options(s));
    const Matrix m = word_product(c, w);
    QueryResult out;
    json f{{"kind", "period"},
           {"word", word_to_string(c, w)},
           {"factor_order", factor_order(c, w)},
           {"x", rvec(x)},
           {"period_certificate", period_json(c, pc)}};
    f["period"] = point_period(m, x, pc.q, period_tol(s));
    try {
        f["common_period"] = common_period(c, x, global_period(c, period_options(s)).q, period_tol(s));
    } catch (const Error&) {
        f["common_period"] = nullptr;
    }
    out.fragment = std::move(f);
    return out;
}

QueryResult query_cone(const MatrixCollection& c, const Query& q, const Settings& s) {
    const Word w = parse_word(c, q.word);
    const Vector y = parse_vector(q.vector_text, c.dimension());
    const PeriodCertificate pc = word_period(c, w, period_options(s));
    const Matrix m = word_product(c, w);
    const Vector logy = log_map(y);
    const ConeLimitResult r = cone_limit(c, w, y, pc.q, limit_options(s));
    const HomogeneityReport h = homogeneity_report(ConeMap::from(m));

    QueryResult out;
    json f{{"kind", "cone-limit"},
           {"word", word_to_string(c, w)},
           {"factor_order", factor_order(c, w)},
           {"y", rvec(y)},
           {"period_certificate", period_json(c, pc)}};
    const CommonEigenSystem ces = common_eigenvectors(c, s.structure);
    const bool member = !ces.empty() && lc_membership(logy, ces).has_value();
    f["log_y_in_lc"] = member;
    if (!member) f["warning"] = "log y is not a combination of common eigenvectors; convergence is not guaranteed";
    f["cone_limit"] = json{{"status", to_string(r.status)},
                           {"iterations", r.iterations},
                           {"residual", r.residual},
                           {"eta", rvec(r.eta)},
                           {"eta_linear", rvec(r.eta_linear)},
                           {"path_gap", r.path_gap},
                           {"paths_agree", r.paths_agree}};
    f["homogeneity"] = json{{"exponents", rvec(h.exponents)},
                            {"subhomogeneous_certified", h.subhomogeneous_certified},
                            {"homogeneous_degree_one", h.homogeneous_degree_one}};
    if (r.status != LimitStatus::Converged) {
        out.exit_code = 4;
        out.diagnostic = "cone limit did not converge (" + std::string(to_string(r.status)) + ")";
    } else {
        // the period of eta under f_w is that of log eta under A_w
        try {
            f["period"] = point_period(m, log_map(r.eta), pc.q, period_tol(s));
        } catch (const Error&) {
            f["period"] = nullptr;
        }
        if (!r.paths_agree) {
            out.exit_code = 4;
            out.diagnostic = "cone limit paths disagree";
        }
    }
    out.fragment = std::move(f);
    return out;
}

QueryResult query_q2(const MatrixCollection& c, const Query& q, const Settings& s) {
    const InfiniteWord tau = parse_infinite_word(c, q.tau);
    const Vector x = parse_vector(q.vector_text, c.dimension());
    Q2Options o;
    o.limit = limit_options(s);
    o.period = period_options(s);
    o.structure = s.structure;
    o.budget = q.budget;
    const Q2Certificate cert = q2_certificate(c, tau, x, o);

    json lambdas = json::object();
    for (Letter r = 0; r < c.size(); ++r) lambdas[c.names()[r]] = cert.lambdas[r];
    json phi = json::array();
    for (const auto& row : cert.phi) phi.push_back(row);
    json residues = json::array();
    for (const auto& row : cert.residues) residues.push_back(row);
    json tuple = json::array();
    for (const auto& comp : cert.tuple.components) tuple.push_back(rvec(comp));
    QueryResult out;
    out.fragment = json{{"kind", "q2"},
                        {"tau", describe(c, tau)},
                        {"x", rvec(x)},
                        {"m", cert.m},
                        {"q", cert.q},
                        {"kappa", cert.kappa},
                        {"budget", cert.budget},
                        {"p_gammas", cert.p_gammas},
                        {"lambdas", lambdas},
                        {"phi", phi},
                        {"residues", residues},
                        {"xi", rvec(cert.xi)},
                        {"tuple", tuple}};
    return out;
}

QueryResult query_eigensystem(const MatrixCollection& c, const Settings& s) {
    QueryResult out;
    json spectra = json::object();
    for (Letter r = 0; r < c.size(); ++r) {
        const auto ed = eigendecompose(c[r], s.structure.spectral);
        json e{{"eigenvalues", cvec(ed.eigenvalues)}, {"rho", ed.spectral_radius()}, {"defective", ed.defective()}};
        spectra[c.names()[r]] = e;
    }
    json f{{"kind", "eigensystem"}, {"spectra", spectra}};
    f["common_eigensystem"] = eigensystem_json(c, common_eigenvectors(c, s.structure));
    try {
        f["period_certificate"] = period_json(c, global_period(c, period_options(s)));
    } catch (const Error& e) {
        f["period_certificate"] = json{{"error", to_string(e.code())}, {"message", e.what()}};
    }
    out.fragment = std::move(f);
    return out;
}

QueryResult query_classify(const MatrixCollection& c, const Settings& s) {
    QueryResult out;
    const auto u = simultaneous_triangularization(c, s.structure);
    out.fragment = json{{"kind", "classify"},
                        {"pairwise_commuting", pairwise_commuting(c, s.structure.tol)},
                        {"all_diagonalizable", all_diagonalizable(c, s.structure.spectral)},
                        {"simultaneously_triangularizable", u.has_value()}};
    return out;
}

std::string_view kind_name(QueryKind k) {
    switch (k) {
    case QueryKind::Validate: return "validate";
    case QueryKind::Classify: return "classify";
    case QueryKind::Eigensystem: return "eigensystem";
    case QueryKind::Limit: return "limit";
    case QueryKind::Period: return "period";
    case QueryKind::ConeLimit: return "cone-limit";
    case QueryKind::Q2: return "q2";
    }
    return "unknown";
}

} // namespace

Outcome run_query(const CollectionSpec& spec, const Query& query, const Settings& settings, Format format) {
    json doc{{"tool", "nnprod"}, {"tool_version", kToolVersion}, {"query", kind_name(query.kind)}};
    doc["tolerances"] = tolerances_json(settings);
    Outcome out;
    auto fail = [&](ErrorCode code, const std::string& msg) {
        doc["error"] = json{{"code", to_string(code)}, {"message", msg}};
        out.exit_code = exit_code_for(code);
        out.diagnostic = std::string(to_string(code)) + ": " + msg;
    };
    try {
        const MatrixCollection c = spec.collection();
        doc["input"] = json{{"dimension", c.dimension()}, {"names", c.names()}};
        const ValidationReport v = validate(c, settings);
        doc["validation"] = validation_json(c, v);
        if (query.kind == QueryKind::Validate) {
            if (!v.hypotheses_met) fail(ErrorCode::HypothesesNotMet, "collection does not satisfy the hypotheses");
        } else if (!v.hypotheses_met && !settings.force) {
            fail(ErrorCode::HypothesesNotMet, "collection does not satisfy the hypotheses (use --force to continue)");
        } else {
            QueryResult r;
            switch (query.kind) {
            case QueryKind::Classify: r = query_classify(c, settings); break;
            case QueryKind::Eigensystem: r = query_eigensystem(c, settings); break;
            case QueryKind::Limit: r = query_limit(c, query, settings); break;
            case QueryKind::Period: r = query_period(c, query, settings); break;
            case QueryKind::ConeLimit: r = query_cone(c, query, settings); break;
            case QueryKind::Q2: r = query_q2(c, query, settings); break;
            case QueryKind::Validate: break;
            }
            doc["result"] = std::move(r.fragment);
            out.exit_code = r.exit_code;
            out.diagnostic = r.diagnostic;
        }
    } catch (const Error& e) {
        fail(e.code(), e.what());
    }
    doc["exit_code"] = out.exit_code;
    out.text = render(doc, format);
    return out;
}

Outcome run_examples(std::string_view filter, Format format) {
    std::vector<std::string> wanted;
    {
        std::size_t i = 0;
        while (i < filter.size()) {
            std::size_t j = filter.find(',', i);
            if (j == std::string_view::npos) j = filter.size();
            if (j > i) wanted.emplace_back(filter.substr(i, j - i));
            i = j + 1;
        }
    }
    const auto cases = builtin_examples();
    Outcome out;
    for (const auto& w : wanted) {
        if (std::none_of(cases.begin(), cases.end(), [&](const ExampleCase& e) { return e.id == w; })) {
            out.exit_code = 2;
            out.diagnostic = "InvalidInput: unknown example '" + w + "'";
            return out;
        }
    }
    json list = json::array();
    std::size_t passed = 0, failed = 0;
    std::string first_failure;
    for (const auto& ex : cases) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), ex.id) == wanted.end()) continue;
        std::vector<CheckResult> checks;
        try {
            checks = ex.run();
        } catch (const Error& e) {
            checks.push_back(CheckResult{"ran without error", false, e.what()});
        }
        json cj = json::array();
        bool ok = true;
        for (const auto& ch : checks) {
            ok = ok && ch.passed;
            json one{{"name", ch.name}, {"passed", ch.passed}};
            if (!ch.detail.empty()) one["detail"] = ch.detail;
            cj.push_back(one);
        }
        (ok ? passed : failed)++;
        if (!ok && first_failure.empty()) first_failure = ex.id;
        list.push_back(json{{"id", ex.id}, {"title", ex.title}, {"passed", ok}, {"checks", cj}});
    }
    json doc{{"tool", "nnprod"}, {"tool_version", kToolVersion}, {"examples", list}, {"passed", passed}, {"failed", failed}};
    if (!first_failure.empty()) {
        doc["first_failure"] = first_failure;
        out.exit_code = 1;
        out.diagnostic = "example failed: " + first_failure;
    }
    if (format == Format::Machine) {
        out.text = machine_text(doc);
        return out;
    }
    std::ostringstream os;
    for (const auto& e : list) {
        char line[160];
        std::snprintf(line, sizeof line, "%-10s %s  %s\n", e["id"].get<std::string>().c_str(),
                      e["passed"].get<bool>() ? "PASS" : "FAIL", e["title"].get<std::string>().c_str());
        os << line;
        for (const auto& ch : e["checks"]) {
            if (ch["passed"].get<bool>()) continue;
            os << "    failed: " << ch["name"].get<std::string>();
            if (ch.contains("detail")) os << " (" << ch["detail"].get<std::string>() << ")";
            os << '\n';
        }
    }
    os << passed << " passed, " << failed << " failed\n";
    out.text = os.str();
    return out;
}

std::string canonicalize_machine_report(std::string_view text) {
    return machine_text(json::parse(text.begin(), text.end()));
}

} // namespace nnprod
