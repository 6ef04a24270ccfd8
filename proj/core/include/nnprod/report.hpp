#pragma once

#include <nnprod/structure.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nnprod {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Parsed input document.
struct CollectionSpec {
    std::size_t dimension = 0;
    std::vector<std::string> names;
    std::vector<Matrix> matrices;
    std::optional<double> rho_tol;
    std::optional<double> tol;
    std::optional<unsigned long long> max_iter;

    MatrixCollection collection() const { return MatrixCollection(names, matrices); }
};

/// Throws InvalidInput (naming the entry, e.g. "matrices.A[1][2]") for
/// malformed or negative entries and DimensionMismatch for wrong shapes.
CollectionSpec parse_collection_spec(std::string_view json_text);

/// "2,0,1/3" or "2 0 1/3"; throws DimensionMismatch unless exactly n entries.
Vector parse_vector(std::string_view text, std::size_t n);

struct Settings {
    double tol = 1e-10;
    double rho_tol = 1e-8;
    unsigned long long max_iter = 100000;
    double bound = 1e12;
    bool force = false;
    StructureOptions structure{};
};

/// Defaults, then the document's options, then explicit overrides.
Settings resolve_settings(const CollectionSpec& spec, std::optional<double> tol, std::optional<double> rho_tol,
                          std::optional<unsigned long long> max_iter, std::optional<double> bound, bool force);

struct PairEntry {
    Letter r = 0;
    Letter s = 0;
    PairClassification classification;
};

struct ValidationReport {
    MatrixCollection::Validation matrices;
    std::vector<PairEntry> pairs;
    QuasiCommutingResult quasi;
    /// "commuting", "quasi-commuting", "laffey", "partially-commuting" or "none".
    std::string structure;
    bool hypotheses_met = false;
    std::vector<std::string> warnings;
};

ValidationReport validate(const MatrixCollection& collection, const Settings& settings);

enum class QueryKind { Validate, Classify, Eigensystem, Limit, Period, ConeLimit, Q2 };

struct Query {
    QueryKind kind = QueryKind::Validate;
    std::string word;
    std::string vector_text;
    std::string tau;
    std::optional<std::size_t> budget;
};

enum class Format { Human, Machine };

struct Outcome {
    int exit_code = 0;
    /// Report for standard output.
    std::string text;
    /// One-line message for standard error, empty on success.
    std::string diagnostic;
};

int exit_code_for(ErrorCode code) noexcept;

/// Runs one query and renders the whole report.
Outcome run_query(const CollectionSpec& spec, const Query& query, const Settings& settings, Format format);

/// Pass/fail table of the built-in examples. `filter` is empty or a
/// comma-separated list of ids; exit code 1 names the first failure.
Outcome run_examples(std::string_view filter, Format format);

/// Reformat a machine report (used to check lossless round trips).
std::string canonicalize_machine_report(std::string_view text);

} // namespace nnprod
