#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prevplot/prevplot.hpp"

namespace {

using namespace prevplot;

// ---------------------------------------------------------------------------
// Argument parsing helpers.
// ---------------------------------------------------------------------------

bool parse_number(const std::string& text, double& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

/// Accepts "0.06" or "6%" and normalizes to a fraction in [0,1].
const CLI::Validator percent_or_fraction{
    [](std::string& input) -> std::string {
        std::string text = input;
        bool percent = !text.empty() && text.back() == '%';
        if (percent) text.pop_back();
        double value = 0.0;
        if (!parse_number(text, value)) {
            return "'" + input + "' is not a number";
        }
        if (percent) value /= 100.0;
        if (!(value >= 0.0 && value <= 1.0)) {
            return "value " + input + " must lie in [0,1] (pass percentages as '6%')";
        }
        input = format_double(value);
        return {};
    },
    "FRACTION or PERCENT", "percent_or_fraction"};

const CLI::Validator unit_interval{
    [](std::string& input) -> std::string {
        double value = 0.0;
        if (!parse_number(input, value)) return "'" + input + "' is not a number";
        if (!(value >= 0.0 && value <= 1.0)) return "value " + input + " must lie in [0,1]";
        return {};
    },
    "in [0,1]", "unit_interval"};

const CLI::Validator open_unit_interval{
    [](std::string& input) -> std::string {
        double value = 0.0;
        if (!parse_number(input, value)) return "'" + input + "' is not a number";
        if (!(value > 0.0 && value < 1.0)) {
            return "value " + input + " must lie strictly between 0 and 1";
        }
        return {};
    },
    "in (0,1)", "open_unit_interval"};

const CLI::Validator at_least_two{
    [](std::string& input) -> std::string {
        unsigned long value = 0;
        auto [ptr, ec] = std::from_chars(input.data(), input.data() + input.size(), value);
        if (ec != std::errc{} || ptr != input.data() + input.size()) {
            return "'" + input + "' is not a whole number";
        }
        if (value < 2) return "grid needs at least 2 points";
        return {};
    },
    "at least 2", "at_least_two"};

const CLI::Validator single_char{
    [](std::string& input) -> std::string {
        if (input.size() != 1) return "delimiter must be a single character";
        return {};
    },
    "one character", "single_char"};

// ---------------------------------------------------------------------------
// Shared option bundles.
// ---------------------------------------------------------------------------

struct RatesOrCounts {
    double sens = 0.0;
    double spec = 0.0;
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double confidence = 0.95;
    CLI::Option* sens_opt = nullptr;
    CLI::Option* spec_opt = nullptr;
    CLI::Option* tp_opt = nullptr;
    CLI::Option* fp_opt = nullptr;
    CLI::Option* fn_opt = nullptr;
    CLI::Option* tn_opt = nullptr;

    void attach(CLI::App* cmd) {
        sens_opt = cmd->add_option("--sens", sens, "Sensitivity (true positive rate)")
                       ->check(unit_interval);
        spec_opt = cmd->add_option("--spec", spec, "Specificity (true negative rate)")
                       ->check(unit_interval);
        tp_opt = cmd->add_option("--tp", tp, "True positives from a validation study");
        fp_opt = cmd->add_option("--fp", fp, "False positives from a validation study");
        fn_opt = cmd->add_option("--fn", fn, "False negatives from a validation study");
        tn_opt = cmd->add_option("--tn", tn, "True negatives from a validation study");
        cmd->add_option("--confidence", confidence,
                        "Confidence level for intervals (default 0.95)")
            ->check(open_unit_interval)
            ->capture_default_str();
    }

    TestCharacteristics resolve() const {
        bool rates = sens_opt->count() > 0 || spec_opt->count() > 0;
        bool counts = tp_opt->count() > 0 || fp_opt->count() > 0 || fn_opt->count() > 0 ||
                      tn_opt->count() > 0;
        if (rates && counts) {
            throw CLI::ValidationError("pass either --sens/--spec or --tp/--fp/--fn/--tn, not both");
        }
        if (rates) {
            if (sens_opt->count() == 0 || spec_opt->count() == 0) {
                throw CLI::ValidationError("--sens and --spec go together");
            }
            return TestCharacteristics(sens, spec);
        }
        if (counts) {
            if (tp_opt->count() == 0 || fp_opt->count() == 0 || fn_opt->count() == 0 ||
                tn_opt->count() == 0) {
                throw CLI::ValidationError("--tp, --fp, --fn and --tn go together");
            }
            return characteristics_from_matrix(ConfusionMatrix{tp, fp, fn, tn}, confidence);
        }
        throw CLI::ValidationError("pass --sens/--spec or --tp/--fp/--fn/--tn");
    }
};

struct CostFlags {
    double cost_fa = 0.0;
    double cost_md = 0.0;
    CLI::Option* fa_opt = nullptr;
    CLI::Option* md_opt = nullptr;

    void attach(CLI::App* cmd) {
        fa_opt = cmd->add_option("--cost-fa", cost_fa, "Cost per false alarm")
                     ->check(CLI::NonNegativeNumber);
        md_opt = cmd->add_option("--cost-md", cost_md, "Cost per missed case")
                     ->check(CLI::NonNegativeNumber);
        fa_opt->needs(md_opt);
        md_opt->needs(fa_opt);
    }

    std::optional<CostWeights> resolve() const {
        if (fa_opt->count() == 0) return std::nullopt;
        return CostWeights{cost_fa, cost_md};
    }
};

struct CsvFlags {
    std::string path;
    std::string score_column = "score";
    std::string label_column = "label";
    std::string positive_label = "1";
    std::string delimiter = ",";
    bool no_header = false;
    bool invert_scores = false;

    CLI::Option* attach(CLI::App* cmd, bool required) {
        auto* input = cmd->add_option("--input", path,
                                      "CSV of scored samples ('-' reads standard input)");
        if (required) input->required();
        cmd->add_option("--score-col", score_column, "Score column (name, or index without header)")
            ->capture_default_str();
        cmd->add_option("--label-col", label_column, "Label column (name, or index without header)")
            ->capture_default_str();
        cmd->add_option("--positive-label", positive_label, "Label value meaning diseased")
            ->capture_default_str();
        cmd->add_option("--delimiter", delimiter, "Field delimiter")
            ->check(single_char)
            ->capture_default_str();
        cmd->add_flag("--no-header", no_header, "Treat the first line as data, not a header");
        cmd->add_flag("--invert-scores", invert_scores,
                      "Negate scores (use when low scores mean diseased)");
        return input;
    }

    std::vector<ScoredSample> load() const {
        CsvIngestConfig config;
        config.score_column = score_column;
        config.label_column = label_column;
        config.positive_label = positive_label;
        config.delimiter = delimiter[0];
        config.has_header = !no_header;
        config.invert_scores = invert_scores;
        if (path == "-") return parse_samples_csv(std::cin, config);
        std::ifstream file(path);
        if (!file) throw Error("cannot open '" + path + "'");
        return parse_samples_csv(file, config);
    }
};

// ---------------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------------

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error("cannot write '" + path.string() + "'");
}

/// Write to the given path, or to stdout for "-".
void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    write_file(path, content);
}

std::string pad(const std::string& label, std::size_t width = 26) {
    std::string out = "  " + label;
    while (out.size() < width) out += ' ';
    return out;
}

std::string characteristics_lines(const TestCharacteristics& chars) {
    std::string out;
    out += pad("Sensitivity") + format_percent(chars.sensitivity().value());
    if (chars.sensitivity_ci()) {
        const auto& ci = *chars.sensitivity_ci();
        out += "  (" + format_whole(ci.confidence_level() * 100.0) + "% CI: " +
               format_percent(ci.lower().value()) + " to " + format_percent(ci.upper().value()) +
               ")";
    }
    out += "  [" + format_double(chars.sensitivity().value()) + "]\n";
    out += pad("Specificity") + format_percent(chars.specificity().value());
    if (chars.specificity_ci()) {
        const auto& ci = *chars.specificity_ci();
        out += "  (" + format_whole(ci.confidence_level() * 100.0) + "% CI: " +
               format_percent(ci.lower().value()) + " to " + format_percent(ci.upper().value()) +
               ")";
    }
    out += "  [" + format_double(chars.specificity().value()) + "]\n";
    return out;
}

std::string performance_lines(const TranslatedPerformance& tp) {
    auto percent_row = [](const std::string& label, const std::optional<double>& v) {
        if (!v) return pad(label) + "undefined (0/0 at this prevalence)\n";
        return pad(label) + format_percent(*v) + "  [" + format_double(*v) + "]\n";
    };
    std::string out;
    out += pad("Prevalence") + format_percent(tp.prevalence) + "  [" +
           format_double(tp.prevalence) + "]\n";
    out += percent_row("False alarms", tp.false_alarm_rate);
    out += percent_row("Missed cases", tp.missed_case_rate);
    out += percent_row("PPV", tp.ppv);
    out += percent_row("NPV", tp.npv);
    out += pad("Tests per detected case") + format_whole(tp.tests_per_detected_case) + "  [" +
           format_double(tp.tests_per_detected_case) + "]\n";
    out += percent_row("Positive test rate", tp.positive_test_rate);
    out += percent_row("Accuracy", tp.accuracy);
    if (tp.expected_cost) {
        out += pad("Expected cost / person") + format_double(*tp.expected_cost) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

struct MetricsOptions {
    RatesOrCounts source;
    CostFlags costs;
    std::string prevalence;
    bool json = false;
};

void run_metrics(const MetricsOptions& o) {
    auto chars = o.source.resolve();
    auto tp = translate(chars, std::stod(o.prevalence), o.costs.resolve());
    if (o.json) {
        nlohmann::ordered_json j{
            {"schema_version", kReportSchemaVersion},
            {"characteristics", jsondetail::characteristics_json(chars)},
            {"performance", jsondetail::performance_json(tp)}};
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "Test characteristics (rounded, [exact]):\n"
              << characteristics_lines(chars) << "\nAt the given prevalence:\n"
              << performance_lines(tp);
}

struct SweepOptions {
    RatesOrCounts source;
    CostFlags costs;
    std::string marker;
    std::size_t steps = kDefaultGridSteps;
    std::vector<double> grid_points;
    std::string format = "csv";
    std::string out_file = "-";
    std::string title;
};

void run_sweep(const SweepOptions& o) {
    auto chars = o.source.resolve();
    std::optional<Probability> marker;
    PrevalenceCurve curve{chars, {}, {}, {}};
    try {
        if (!o.marker.empty()) marker = Probability(std::stod(o.marker));
        auto grid = o.grid_points.empty()
                        ? PrevalenceGrid(0.0, 1.0, o.steps)
                        : PrevalenceGrid::from_points(o.grid_points);
        curve = sweep(chars, grid, marker, o.costs.resolve());
    } catch (const InvalidGrid& e) {
        throw CLI::ValidationError(e.what());
    }

    if (o.format == "csv") {
        write_output(o.out_file, curve_table_to_csv(curve_to_table(curve)));
    } else if (o.format == "json") {
        write_output(o.out_file, curve_to_json(curve));
    } else {
        PlotOptions opts;
        opts.title = o.title;
        write_output(o.out_file, render_prevalence_plot(curve, opts));
    }
}

struct RocOptions {
    CsvFlags csv;
    double confidence = 0.95;
    bool json = false;
    std::string svg_file;
    std::string report_dir;
    std::string prevalence;
    CostFlags costs;
    bool plots = false;
};

void write_report_files(const Report& report, const std::string& dir, bool plots) {
    std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) throw Error("cannot create directory '" + dir + "'");

    write_file(base / "report.json", report_to_json(report));
    write_file(base / "report.md", report_to_markdown(report));
    std::cout << "wrote " << (base / "report.json").string() << "\n"
              << "wrote " << (base / "report.md").string() << "\n";
    if (plots) {
        write_file(base / "prevalence.svg", render_prevalence_plot(report.curve));
        std::cout << "wrote " << (base / "prevalence.svg").string() << "\n";
        if (report.roc) {
            write_file(base / "roc.svg", render_roc_plot(*report.roc));
            std::cout << "wrote " << (base / "roc.svg").string() << "\n";
        }
    }
}

void run_roc(const RocOptions& o) {
    auto samples = o.csv.load();
    auto roc = empirical_roc(samples);
    try {
        roc.auc_ci = auc_ci_delong(samples, o.confidence);
    } catch (const TooFewSamples&) {
        // Interval needs 2+ samples per class; report the point estimate alone.
    }
    auto best = youden_optimal_point(roc);
    auto chars = characteristics_at_point(best, samples, o.confidence);

    if (o.json) {
        nlohmann::ordered_json j{
            {"schema_version", kReportSchemaVersion},
            {"roc", jsondetail::roc_json(roc)},
            {"youden",
             {{"threshold", jsondetail::number_or_null(best.threshold)},
              {"true_positive_rate", best.true_positive_rate},
              {"false_positive_rate", best.false_positive_rate}}},
            {"characteristics_at_youden", jsondetail::characteristics_json(chars)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << pad("Diseased samples") << roc.n_diseased << "\n"
                  << pad("Healthy samples") << roc.n_healthy << "\n";
        std::string auc_line = format_fixed(roc.auc, 2);
        if (roc.auc_ci) {
            auc_line += " (" + format_whole(roc.auc_ci->confidence_level() * 100.0) +
                        "% CI: " + format_fixed(roc.auc_ci->lower().value(), 2) + ", " +
                        format_fixed(roc.auc_ci->upper().value(), 2) + ")";
        }
        std::cout << pad("AUC") << auc_line << "  [" << format_double(roc.auc) << "]\n"
                  << pad("Youden threshold") << format_double(best.threshold) << "\n"
                  << characteristics_lines(chars);
    }

    if (!o.svg_file.empty()) {
        write_output(o.svg_file, render_roc_plot(roc));
    }
    if (!o.report_dir.empty()) {
        auto report = build_report(chars, std::stod(o.prevalence), default_grid(),
                                   o.costs.resolve(), roc);
        write_report_files(report, o.report_dir, o.plots);
    }
}

struct ReportOptions {
    RatesOrCounts source;
    CostFlags costs;
    CsvFlags csv;
    CLI::Option* input_opt = nullptr;
    std::string prevalence;
    std::string out_dir = ".";
    bool plots = false;
};

void run_report(const ReportOptions& o) {
    auto chars = o.source.resolve();
    std::optional<RocCurve> roc;
    if (o.input_opt->count() > 0) {
        auto samples = o.csv.load();
        auto curve = empirical_roc(samples);
        try {
            curve.auc_ci = auc_ci_delong(samples, o.source.confidence);
        } catch (const TooFewSamples&) {
        }
        roc = std::move(curve);
    }
    auto report = build_report(chars, std::stod(o.prevalence), default_grid(),
                               o.costs.resolve(), std::move(roc));
    write_report_files(report, o.out_dir, o.plots);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Translate assay sensitivity and specificity into the numbers a clinic\n"
                 "actually experiences: false alarms, missed cases, and tests per detected\n"
                 "case, as functions of disease prevalence."};
    app.set_version_flag("--version", "prevplot 0.1.0");
    app.require_subcommand(1);

    auto metrics = std::make_shared<MetricsOptions>();
    auto* cmd_metrics = app.add_subcommand(
        "metrics", "Evaluate one prevalence: PPV, NPV, false alarms, missed cases");
    metrics->source.attach(cmd_metrics);
    metrics->costs.attach(cmd_metrics);
    cmd_metrics->add_option("--prev", metrics->prevalence,
                            "Disease prevalence (fraction like 0.06, or percent like '6%')")
        ->required()
        ->transform(percent_or_fraction);
    cmd_metrics->add_flag("--json", metrics->json, "Emit JSON instead of a text table");
    cmd_metrics->callback([metrics] { run_metrics(*metrics); });

    auto sweep_opts = std::make_shared<SweepOptions>();
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "Tabulate or plot performance across a prevalence range");
    sweep_opts->source.attach(cmd_sweep);
    sweep_opts->costs.attach(cmd_sweep);
    cmd_sweep->add_option("--marker", sweep_opts->marker,
                          "Prevalence to highlight (fraction or percent)")
        ->transform(percent_or_fraction);
    auto* steps_opt = cmd_sweep->add_option("--steps", sweep_opts->steps,
                                            "Grid points across [0,1] (default 101)")
                          ->check(at_least_two);
    cmd_sweep->add_option("--grid", sweep_opts->grid_points,
                          "Explicit comma-separated prevalences (e.g. 0.0001,0.001,0.01)")
        ->delimiter(',')
        ->excludes(steps_opt);
    cmd_sweep->add_option("--out", sweep_opts->format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    cmd_sweep->add_option("--out-file", sweep_opts->out_file,
                          "Output path ('-' writes standard output)")
        ->capture_default_str();
    cmd_sweep->add_option("--title", sweep_opts->title, "Plot title (svg only)");
    cmd_sweep->callback([sweep_opts] { run_sweep(*sweep_opts); });

    auto roc_opts = std::make_shared<RocOptions>();
    auto* cmd_roc = app.add_subcommand(
        "roc", "Analyze scored samples: ROC curve, AUC, and the Youden cutoff");
    roc_opts->csv.attach(cmd_roc, true);
    cmd_roc->add_option("--confidence", roc_opts->confidence,
                        "Confidence level for intervals (default 0.95)")
        ->check(open_unit_interval)
        ->capture_default_str();
    cmd_roc->add_flag("--json", roc_opts->json, "Emit JSON instead of a text summary");
    cmd_roc->add_option("--out", roc_opts->svg_file, "Write the ROC plot as SVG to this path");
    auto* report_opt = cmd_roc->add_option(
        "--report", roc_opts->report_dir,
        "Write report.json/report.md for the Youden cutoff into this directory");
    auto* roc_prev = cmd_roc->add_option("--prev", roc_opts->prevalence,
                                         "Prevalence for the chained report")
                         ->transform(percent_or_fraction);
    report_opt->needs(roc_prev);
    roc_prev->needs(report_opt);
    roc_opts->costs.attach(cmd_roc);
    cmd_roc->add_flag("--plots", roc_opts->plots, "Also write SVG plots with the report");
    cmd_roc->callback([roc_opts] { run_roc(*roc_opts); });

    auto report_opts = std::make_shared<ReportOptions>();
    auto* cmd_report = app.add_subcommand(
        "report", "Write the full report: characteristics, headline numbers, sweep");
    report_opts->source.attach(cmd_report);
    report_opts->costs.attach(cmd_report);
    cmd_report->add_option("--prev", report_opts->prevalence,
                           "Expected prevalence (fraction like 0.06, or percent like '6%')")
        ->required()
        ->transform(percent_or_fraction);
    report_opts->input_opt = report_opts->csv.attach(cmd_report, false);
    cmd_report->add_option("--out-dir", report_opts->out_dir, "Directory for report files")
        ->capture_default_str();
    cmd_report->add_flag("--plots", report_opts->plots, "Also write SVG plots");
    cmd_report->callback([report_opts] { run_report(*report_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
