#include <nnprod/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nnprod::Error(nnprod::ErrorCode::InvalidInput, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const nnprod::Outcome& out) {
    std::cout << out.text;
    std::cout.flush();
    if (!out.diagnostic.empty()) std::cerr << "nnprod: " << out.diagnostic << '\n';
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis of word-indexed products of nonnegative matrices"};
    app.set_version_flag("--version", std::string(nnprod::kToolVersion));
    app.require_subcommand(1);

    std::optional<double> tol, rho_tol, bound;
    std::optional<unsigned long long> max_iter;
    bool force = false;
    std::string format = "human";
    app.add_option("--tol", tol, "convergence tolerance")->check(CLI::PositiveNumber);
    app.add_option("--rho-tol", rho_tol, "tolerance on |rho - 1|")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--bound", bound, "divergence bound on the iterate norm")->check(CLI::PositiveNumber);
    app.add_flag("--force", force, "continue when the hypotheses are not met");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"human", "machine"}));

    std::string input;
    nnprod::Query query;
    std::string filter;
    std::size_t budget = 0;

    const std::map<std::string, nnprod::QueryKind> kinds{
        {"validate", nnprod::QueryKind::Validate}, {"classify", nnprod::QueryKind::Classify},
        {"eigensystem", nnprod::QueryKind::Eigensystem}, {"limit", nnprod::QueryKind::Limit},
        {"period", nnprod::QueryKind::Period}, {"cone-limit", nnprod::QueryKind::ConeLimit},
        {"q2", nnprod::QueryKind::Q2}};
    const std::map<std::string, std::string> help{
        {"validate", "check the hypotheses"},
        {"classify", "commutativity structure and triangularization"},
        {"eigensystem", "spectra, common eigenvectors and the period certificate"},
        {"limit", "limit of (A_w)^(qk) x"},
        {"period", "period of x under A_w"},
        {"cone-limit", "limit of the conjugated map f_w on the open cone"},
        {"q2", "congruence certificate for an infinite word"}};

    std::vector<CLI::App*> subs;
    for (const auto& [name, kind] : kinds) {
        auto* sub = app.add_subcommand(name, help.at(name))->fallthrough();
        sub->add_option("input", input, "input document (default: standard input)");
        if (kind == nnprod::QueryKind::Limit || kind == nnprod::QueryKind::Period) {
            sub->add_option("--word", query.word, "finite word, leftmost letter applied first")->required();
            sub->add_option("--x", query.vector_text, "starting vector")->required();
        } else if (kind == nnprod::QueryKind::ConeLimit) {
            sub->add_option("--word", query.word, "finite word, leftmost letter applied first")->required();
            sub->add_option("--y", query.vector_text, "positive starting vector")->required();
        } else if (kind == nnprod::QueryKind::Q2) {
            sub->add_option("--tau", query.tau, "periodic:<letters> or seed:<integer>")->required();
            sub->add_option("--x", query.vector_text, "starting vector")->required();
            sub->add_option("--budget", budget, "number of prefixes searched")->check(CLI::PositiveNumber);
        }
        subs.push_back(sub);
    }
    auto* examples = app.add_subcommand("examples", "run the builtin examples")->fallthrough();
    examples->add_option("--filter", filter, "comma-separated example ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const nnprod::Format fmt = format == "machine" ? nnprod::Format::Machine : nnprod::Format::Human;
    if (examples->parsed()) return emit(nnprod::run_examples(filter, fmt));

    for (auto* sub : subs) {
        if (sub->parsed()) query.kind = kinds.at(sub->get_name());
    }
    if (budget > 0) query.budget = budget;

    nnprod::CollectionSpec spec;
    try {
        spec = nnprod::parse_collection_spec(read_input(input));
    } catch (const nnprod::Error& e) {
        std::cerr << "nnprod: " << nnprod::to_string(e.code()) << ": " << e.what() << '\n';
        return nnprod::exit_code_for(e.code());
    }
    const nnprod::Settings settings = nnprod::resolve_settings(spec, tol, rho_tol, max_iter, bound, force);
    return emit(nnprod::run_query(spec, query, settings, fmt));
}
