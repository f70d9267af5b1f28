// Command-line front end: bounds tables, threshold sweeps, the sign-flip
// recursion, exact searches on tiny boxes, and stripe lattice counts, in
// text, CSV, or JSON.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumfree/sumfree.hpp"

using json = nlohmann::json;
using namespace sumfree;

namespace {

struct OutputOptions {
    std::string format = "text";
    int decimals = 6;
    double tolerance = 1e-12;
};

/// The number the formatted decimal string denotes, as a JSON value.
json rounded(double value, int decimals) {
    return json::parse(format_decimal(value, decimals));
}

json rounded(const Rational& value, int decimals) {
    return json::parse(format_decimal(value, decimals));
}

SolverConfig config_for(const OutputOptions& out) {
    SolverConfig cfg;
    cfg.bisection_tolerance = out.tolerance;
    cfg.validate();
    return cfg;
}

json config_json(const SolverConfig& cfg, const OutputOptions& out) {
    return json{{"bisection_tolerance", cfg.bisection_tolerance},
                {"max_bisection_iters", cfg.max_bisection_iters},
                {"sweep_grid_step", cfg.sweep_grid_step},
                {"sweep_refinement_iters", cfg.sweep_refinement_iters},
                {"phi_iteration_cap", cfg.phi_iteration_cap},
                {"series_term_floor", cfg.series_term_floor},
                {"format", out.format},
                {"decimals", out.decimals}};
}

json make_document(const std::string& command, json params, json results, json metadata) {
    metadata["version"] = kVersion;
    return json{{"command", command},
                {"params", std::move(params)},
                {"results", std::move(results)},
                {"metadata", std::move(metadata)}};
}

/// Pad each column to its widest cell; two spaces between columns.
std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size())
                os << std::string(width[c] - row[c].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size()) os << ",";
        }
        os << "\n";
    }
    return os.str();
}

/// Print the chosen rendering. Nothing is written before the whole document
/// is assembled, so failures never leave partial tables behind.
void emit(const OutputOptions& out, const json& doc,
          const std::vector<std::string>& text_header,
          const std::vector<std::vector<std::string>>& table,
          const std::vector<std::string>& text_footer = {}) {
    if (out.format == "json") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    if (out.format == "csv") {
        std::cout << render_csv(table);
        return;
    }
    std::ostringstream os;
    for (const auto& line : text_header) os << "# " << line << "\n";
    os << render_columns(table);
    for (const auto& line : text_footer) os << line << "\n";
    std::cout << os.str();
}

int run_bounds(int k_min, int k_max, int l, const std::string& setting,
               const std::string& variant_name, const OutputOptions& out) {
    if (k_min < 1 || k_min > k_max || k_max > 60)
        throw std::invalid_argument("bounds: need 1 <= k-min <= k-max <= 60");
    if (l < 2) throw std::invalid_argument("bounds: l must be >= 2");

    const SolverConfig cfg = config_for(out);
    const bool continuous = setting == "continuous";
    const auto variant = variant_name == "proof" ? EquationVariant::proof_form
                                                 : EquationVariant::theorem_statement;

    json metadata{{"config", config_json(cfg, out)}};
    std::vector<std::string> notes;
    if (l == 2 && !continuous) {
        metadata["equation_variant"] = variant_name;
        metadata["equation_note"] =
            "the fixed-point equation for the upper bound has two published forms, "
            "'statement' and 'proof', whose roots differ; this run used the '" +
            variant_name + "' form (see --equation-variant)";
        notes.push_back(metadata["equation_note"].get<std::string>());
    }
    if (l >= 4)
        notes.push_back("no upper-bound method is implemented for l >= 4; "
                        "emitting lower bounds only");
    if (continuous && l == 2 && k_min == 1)
        notes.push_back("k = 1: the continuous upper-bound equation has no root "
                        "inside (1/2, 1); upper bound omitted");

    json results = json::array();
    std::vector<std::vector<std::string>> table{
        {"k", "l", "setting", "lower", "lower_exact", "upper"}};

    for (int k = k_min; k <= k_max; ++k) {
        auto low = lower_bound(k, l);
        const ConstantLabel low_label =
            continuous ? (l == 2 ? ConstantLabel::continuous_sumfree : ConstantLabel::continuous_lfold)
                       : low.constant;

        std::optional<BoundResult> up;
        std::string row_note;
        if (l == 2 && !continuous) {
            up = alpha_star(UpperBoundEquation(k, variant), cfg);
        } else if (l == 2 && continuous) {
            if (k >= 2)
                up = alpha_double_star(k, cfg);
            else
                row_note = "no interior root at k = 1";
        } else if (l == 3) {
            up = threefold_upper_bound(k);
        } else {
            row_note = "no upper-bound method for l >= 4";
        }

        json record{{"k", k},
                    {"l", l},
                    {"setting", setting},
                    {"constant", constant_name(low_label, k, l)},
                    {"lower", rounded(*low.exact_value, out.decimals)},
                    {"lower_exact", to_fraction_string(*low.exact_value)}};
        if (up) {
            record["upper"] = rounded(up->value, out.decimals);
            record["upper_method"] = method_name(up->method);
        }
        if (!row_note.empty()) record["note"] = row_note;
        results.push_back(record);

        table.push_back({std::to_string(k), std::to_string(l), setting,
                         format_decimal(*low.exact_value, out.decimals),
                         to_fraction_string(*low.exact_value),
                         up ? format_decimal(up->value, out.decimals) : "-"});
    }
    if (!notes.empty()) metadata["notes"] = notes;

    const json doc = make_document(
        "bounds",
        json{{"k_min", k_min}, {"k_max", k_max}, {"l", l}, {"setting", setting},
             {"equation_variant", l == 2 && !continuous ? json(variant_name) : json()}},
        results, metadata);

    std::vector<std::string> header{"bounds: setting=" + setting + " l=" + std::to_string(l) +
                                    " k=" + std::to_string(k_min) + ".." + std::to_string(k_max)};
    for (const auto& n : notes) header.push_back("note: " + n);
    emit(out, doc, header, table);
    return 0;
}

int run_sweep(int k, int l, const OutputOptions& out) {
    const SolverConfig cfg = config_for(out);
    const auto sw = sweep_optimal_a(k, l, cfg);

    const json record{{"k", k},
                      {"l", l},
                      {"a_opt", rounded(sw.a_opt, out.decimals)},
                      {"volume", rounded(sw.volume, out.decimals)},
                      {"a_reference", rounded(sw.a_reference, out.decimals)},
                      {"volume_at_reference", rounded(sw.volume_at_reference, out.decimals)},
                      {"a_opt_minus_reference",
                       rounded(sw.a_opt - sw.a_reference, out.decimals)}};

    const json doc = make_document("sweep", json{{"k", k}, {"l", l}}, json::array({record}),
                                   json{{"config", config_json(cfg, out)}});

    std::vector<std::vector<std::string>> table{
        {"k", "l", "a_opt", "volume", "a_reference", "volume_at_reference",
         "a_opt_minus_reference"},
        {std::to_string(k), std::to_string(l), format_decimal(sw.a_opt, out.decimals),
         format_decimal(sw.volume, out.decimals), format_decimal(sw.a_reference, out.decimals),
         format_decimal(sw.volume_at_reference, out.decimals),
         format_decimal(sw.a_opt - sw.a_reference, out.decimals)}};

    emit(out, doc,
         {"sweep: k=" + std::to_string(k) + " l=" + std::to_string(l) +
          " (maximizing the stripe volume over the threshold a)"},
         table);
    return 0;
}

int run_sequence(int terms, const OutputOptions& out) {
    const auto seq = corollary_sequence(terms);
    int first_nonpositive = -1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] <= 0.0) {
            first_nonpositive = static_cast<int>(i);
            break;
        }
    }

    json results = json::array();
    std::vector<std::vector<std::string>> table{{"i", "value", "note"}};
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const bool flagged = static_cast<int>(i) == first_nonpositive;
        json record{{"i", i}, {"value", rounded(seq[i], out.decimals)}};
        if (flagged) record["note"] = "first_nonpositive";
        results.push_back(record);
        table.push_back({std::to_string(i), format_decimal(seq[i], out.decimals),
                         flagged ? "first_nonpositive" : ""});
    }

    json metadata{{"config", config_json(config_for(out), out)}};
    metadata["first_nonpositive_index"] =
        first_nonpositive >= 0 ? json(first_nonpositive) : json();
    if (static_cast<int>(seq.size()) < terms)
        metadata["notes"] = json::array(
            {"sequence truncated: the recurrence is undefined past a nonpositive term"});

    const json doc = make_document("sequence", json{{"terms", terms}}, results, metadata);
    emit(out, doc, {"sequence: a_0 = 1/3, a_{i+1} = 1/3 - a_i^{a_i} (1-a_i)^{1-a_i} / e"}, table);
    return 0;
}

int run_exact(long long n, int k, int l, long long node_budget, const OutputOptions& out) {
    SearchInstance inst;
    inst.n = n;
    inst.k = k;
    inst.l = l;
    inst.node_budget = node_budget;
    const auto result = max_sumfree_exact(inst);

    double box = 1.0;
    for (int i = 0; i < k; ++i) box *= static_cast<double>(n);
    const double density = static_cast<double>(result.max_size) / box;

    const auto witness = result.witness.sorted_points();
    json witness_json = json::array();
    std::ostringstream witness_text;
    for (const auto& p : witness) {
        witness_json.push_back(p);
        witness_text << "(";
        for (std::size_t c = 0; c < p.size(); ++c)
            witness_text << p[c] << (c + 1 < p.size() ? "," : ")");
        witness_text << " ";
    }

    const json record{{"n", n},
                      {"k", k},
                      {"l", l},
                      {"max_size", result.max_size},
                      {"density", rounded(density, out.decimals)},
                      {"nodes_explored", result.nodes_explored},
                      {"exhaustive", result.exhaustive},
                      {"witness", witness_json}};

    const json doc = make_document(
        "exact", json{{"n", n}, {"k", k}, {"l", l}, {"node_budget", node_budget}},
        json::array({record}), json{{"config", config_json(config_for(out), out)}});

    std::vector<std::vector<std::string>> table{
        {"n", "k", "l", "max_size", "density", "nodes_explored", "exhaustive"},
        {std::to_string(n), std::to_string(k), std::to_string(l), std::to_string(result.max_size),
         format_decimal(density, out.decimals), std::to_string(result.nodes_explored),
         result.exhaustive ? "yes" : "no"}};

    emit(out, doc, {"exact search: largest l-fold-sumfree subset of {1..n}^k"}, table,
         {"witness: " + witness_text.str()});
    return 0;
}

int run_stripe_count(long long n, int k, long long a_numer, long long a_denom, int l,
                     const OutputOptions& out) {
    if (a_denom < 1) throw std::invalid_argument("stripe-count: a-denom must be >= 1");
    const Rational a(a_numer, a_denom);
    const StripeSpec spec(n, k, a, l);  // validates a > 0 and the rest
    const BigInt count = stripe_count(spec);

    BigInt box = 1;
    for (int i = 0; i < k; ++i) box *= n;
    const Rational density(count, box);

    // the continuous stripe this count approximates: thresholds scaled by n
    const Rational scaled = a / n;
    const Rational volume = scaled <= k ? stripe_volume(k, scaled, l) : Rational(0);
    const Rational err = density > volume ? density - volume : volume - density;
    const Rational normalized_error = Rational(n) * err;

    const json record{{"n", n},
                      {"k", k},
                      {"l", l},
                      {"a", to_fraction_string(a)},
                      {"count", count.str()},
                      {"density", rounded(density, out.decimals)},
                      {"volume", rounded(volume, out.decimals)},
                      {"normalized_error", rounded(normalized_error, out.decimals)}};

    const json doc = make_document(
        "stripe-count",
        json{{"n", n}, {"k", k}, {"a_numer", a_numer}, {"a_denom", a_denom}, {"l", l}},
        json::array({record}), json{{"config", config_json(config_for(out), out)}});

    std::vector<std::vector<std::string>> table{
        {"n", "k", "l", "a", "count", "density", "volume", "normalized_error"},
        {std::to_string(n), std::to_string(k), std::to_string(l), to_fraction_string(a),
         count.str(), format_decimal(density, out.decimals),
         format_decimal(volume, out.decimals),
         format_decimal(normalized_error, out.decimals)}};

    emit(out, doc,
         {"stripe count: #{x in {1..n}^k : a <= sum x_i < l*a} vs the scaled volume"},
         table);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounds and witnesses for sumfree subsets of hypercubes"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputOptions out;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--decimals", out.decimals, "digits after the decimal point")
        ->check(CLI::Range(1, 15))
        ->capture_default_str();
    app.add_option("--tolerance", out.tolerance, "bisection tolerance")
        ->capture_default_str();

    auto* bounds_cmd = app.add_subcommand("bounds", "lower/upper bound table over a k range");
    int k_min = 2, k_max = 6, bounds_l = 2;
    std::string setting = "discrete", variant = "statement";
    bounds_cmd->add_option("--k-min", k_min)->capture_default_str();
    bounds_cmd->add_option("--k-max", k_max)->capture_default_str();
    bounds_cmd->add_option("--l", bounds_l)->capture_default_str();
    bounds_cmd->add_option("--setting", setting)
        ->check(CLI::IsMember({"discrete", "continuous"}))
        ->capture_default_str();
    bounds_cmd->add_option("--equation-variant", variant)
        ->check(CLI::IsMember({"statement", "proof"}))
        ->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "optimal stripe threshold for one k");
    int sweep_k = 2, sweep_l = 2;
    sweep_cmd->add_option("--k", sweep_k)->capture_default_str();
    sweep_cmd->add_option("--l", sweep_l)->capture_default_str();

    auto* sequence_cmd = app.add_subcommand("sequence", "the sign-flip recurrence a_i");
    int terms = 8;
    sequence_cmd->add_option("--terms", terms)->capture_default_str();

    auto* exact_cmd = app.add_subcommand("exact", "exact optimum on a tiny box");
    long long exact_n = 2;
    int exact_k = 2, exact_l = 2;
    long long node_budget = 100000000;
    exact_cmd->add_option("--n", exact_n)->required();
    exact_cmd->add_option("--k", exact_k)->required();
    exact_cmd->add_option("--l", exact_l)->capture_default_str();
    exact_cmd->add_option("--node-budget", node_budget)->capture_default_str();

    auto* stripe_cmd = app.add_subcommand("stripe-count", "lattice points in a stripe");
    long long sc_n = 1, sc_numer = 1, sc_denom = 1;
    int sc_k = 1, sc_l = 2;
    stripe_cmd->add_option("--n", sc_n)->required();
    stripe_cmd->add_option("--k", sc_k)->required();
    stripe_cmd->add_option("--a-numer", sc_numer)->required();
    stripe_cmd->add_option("--a-denom", sc_denom)->capture_default_str();
    stripe_cmd->add_option("--l", sc_l)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bounds_cmd) return run_bounds(k_min, k_max, bounds_l, setting, variant, out);
        if (*sweep_cmd) return run_sweep(sweep_k, sweep_l, out);
        if (*sequence_cmd) return run_sequence(terms, out);
        if (*exact_cmd) return run_exact(exact_n, exact_k, exact_l, node_budget, out);
        if (*stripe_cmd)
            return run_stripe_count(sc_n, sc_k, sc_numer, sc_denom, sc_l, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
