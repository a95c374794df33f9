// superpos: closed paths, superposition membership and ridge interpolation
// on finite point sets, in exact rational arithmetic.

#include <superpos/cli.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace superpos;

superpos::RationalVector parse_vector_flag(const std::string& text)
{
    RationalVector v;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        v.push_back(parse_rational(item));
    return v;
}

std::vector<RationalVector> parse_vectors_flag(const std::string& text)
{
    std::vector<RationalVector> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ';'))
        out.push_back(parse_vector_flag(item));
    return out;
}

struct Common {
    bool json = false;
    bool timing = false;
    std::string output;
};

int emit(const cli::Outcome& outcome, const Common& common, double seconds)
{
    cli::Outcome o = outcome;
    if (common.timing)
        o.report["timing_seconds"] = seconds;
    const std::string machine = o.report.dump(2) + "\n";
    if (!common.output.empty()) {
        std::ofstream out(common.output, std::ios::binary);
        if (!out)
            throw InputError("cannot write " + common.output);
        out << machine;
    }
    if (common.json)
        std::cout << machine;
    else
        std::cout << o.summary;
    if (common.timing && !common.json)
        std::cout << "(" << seconds << " s)\n";
    return o.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Closed paths and linear superpositions on finite point sets"};
    app.require_subcommand(1);

    Common common;
    std::string instance_path;
    std::string mode_text;
    std::optional<std::size_t> max_support;
    std::optional<std::string> quantize_eps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> center_text;
    std::optional<std::string> scale_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", common.json, "Print the machine-readable report instead of the summary");
        sub->add_option("--output", common.output, "Also write the machine-readable report to this path");
        sub->add_flag("--timing", common.timing, "Include wall-clock timing (makes reports non-reproducible)");
        sub->add_option("--quantize-eps", quantize_eps,
                        "Merge function values closer than this (every merge is reported)");
        sub->add_option("--seed", seed, "Seed for deterministic retries");
    };
    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("instance", instance_path, "Instance JSON file")->required();
    };

    auto* detect_cmd = app.add_subcommand("detect", "Find a closed path (exit 1) or prove there is none (exit 0)");
    add_instance(detect_cmd);
    add_common(detect_cmd);

    auto* circuits_cmd = app.add_subcommand("circuits", "Enumerate minimal closed paths");
    add_instance(circuits_cmd);
    add_common(circuits_cmd);
    circuits_cmd->add_option("--mode", mode_text, "fundamental or exhaustive")
        ->check(CLI::IsMember({"fundamental", "exhaustive"}));
    circuits_cmd->add_option("--max-support", max_support, "Largest closed path to report");

    auto* represent_cmd = app.add_subcommand("represent", "Decide whether the target is a superposition");
    add_instance(represent_cmd);
    add_common(represent_cmd);

    auto* ridge_cmd = app.add_subcommand("ridge", "Ridge-function analyses");
    ridge_cmd->require_subcommand(1);
    auto* classify_cmd = ridge_cmd->add_subcommand("classify", "NI / MNI / interpolable");
    add_instance(classify_cmd);
    add_common(classify_cmd);
    auto* hypercube_cmd = ridge_cmd->add_subcommand("hypercube", "Hypercube closed path around a point");
    add_instance(hypercube_cmd);
    add_common(hypercube_cmd);
    hypercube_cmd->add_option("--center", center_text, "Comma-separated rational coordinates");
    hypercube_cmd->add_option("--scale", scale_text, "Rational offset scale");

    std::string kind_text;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> dimension;
    std::optional<std::size_t> count;
    std::optional<std::string> start_text;
    std::optional<std::string> step_text;
    std::optional<std::string> half_period_text;
    std::optional<std::string> directions_text;
    std::optional<std::string> curve_text;
    std::optional<std::string> line_text;
    auto add_generate = [&](CLI::App* sub) {
        sub->add_option("kind", kind_text, "parallel-lines | zigzag | staircase | transversal-curve")
            ->required();
        sub->add_option("--samples", samples, "Samples per line or along the curve");
        sub->add_option("--dimension", dimension, "Staircase ambient dimension");
        sub->add_option("--count", count, "Staircase direction count r");
        sub->add_option("--start", start_text, "First sample parameter");
        sub->add_option("--step", step_text, "Sample parameter step");
        sub->add_option("--half-period", half_period_text, "Zigzag half period");
        sub->add_option("--directions", directions_text, "Directions as \"1,0;0,1\"");
        sub->add_option("--curve", curve_text, "Curve polynomial coefficients as \"0,0;1,0;0,1\"");
        sub->add_option("--line", line_text, "Parallel-lines direction vector");
        add_common(sub);
    };
    auto* generate_cmd = app.add_subcommand("generate", "Emit a path-free example instance");
    add_generate(generate_cmd);
    auto* ridge_generate_cmd = ridge_cmd->add_subcommand("generate", "Same as the top-level generate");
    add_generate(ridge_generate_cmd);

    std::string report_path;
    auto* verify_cmd = app.add_subcommand("verify", "Re-verify every certificate in a report");
    verify_cmd->add_option("report", report_path, "Report JSON file")->required();
    verify_cmd->add_option("--instance", instance_path, "Instance the report was computed on");
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::exit_usage;
    }

    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    try {
        auto load = [&] {
            Instance inst = load_instance(instance_path);
            if (quantize_eps) {
                inst.merges = quantize(inst.family, parse_rational(*quantize_eps));
            }
            return inst;
        };

        cli::Outcome outcome;
        if (detect_cmd->parsed()) {
            outcome = cli::cmd_detect(load());
        } else if (circuits_cmd->parsed()) {
            Instance inst = load();
            EnumerationMode mode = mode_text.empty()
                                       ? inst.options.mode.value_or(EnumerationMode::fundamental)
                                       : parse_mode(mode_text);
            std::size_t cap = max_support.value_or(
                inst.options.max_support.value_or(std::max<std::size_t>(inst.points.size(), 2)));
            outcome = cli::cmd_circuits(inst, mode, cap);
        } else if (represent_cmd->parsed()) {
            outcome = cli::cmd_represent(load());
        } else if (classify_cmd->parsed()) {
            outcome = cli::cmd_ridge_classify(load());
        } else if (hypercube_cmd->parsed()) {
            std::optional<RationalVector> center;
            if (center_text)
                center = parse_vector_flag(*center_text);
            std::optional<Rational> scale;
            if (scale_text)
                scale = parse_rational(*scale_text);
            outcome = cli::cmd_ridge_hypercube(load(), center, scale, seed);
        } else if (generate_cmd->parsed() || ridge_generate_cmd->parsed()) {
            ExampleParams params;
            if (samples)
                params.samples = *samples;
            if (dimension)
                params.dimension = *dimension;
            if (count)
                params.count = *count;
            if (start_text)
                params.start = parse_rational(*start_text);
            if (step_text)
                params.step = parse_rational(*step_text);
            if (half_period_text)
                params.half_period = parse_rational(*half_period_text);
            if (directions_text)
                params.directions = parse_vectors_flag(*directions_text);
            if (curve_text)
                params.curve = parse_vectors_flag(*curve_text);
            if (line_text)
                params.line_direction = parse_vector_flag(*line_text);
            outcome = cli::cmd_generate(parse_example_kind(kind_text), params);
        } else if (verify_cmd->parsed()) {
            std::ifstream in(report_path);
            if (!in)
                throw InputError("cannot open report " + report_path);
            Json report;
            try {
                report = Json::parse(in);
            } catch (const Json::parse_error& e) {
                throw InputError(report_path + ": malformed JSON: " + e.what());
            }
            std::optional<Instance> inst;
            if (!instance_path.empty())
                inst = load();
            outcome = cli::cmd_verify(report, inst);
        }
        return emit(outcome, common, elapsed());
    } catch (const cli::InvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return cli::exit_invariant;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const UnsatisfiableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_usage;
    }
}
