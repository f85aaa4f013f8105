#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "prevplot/format.hpp"
#include "prevplot/roc.hpp"
#include "prevplot/sweep.hpp"

namespace prevplot {

inline constexpr int kReportSchemaVersion = 1;

/// Headline facts a reviewer should see first.
struct ReportNarrative {
    std::optional<double> breakeven_prevalence;   // unset for the degenerate never-fires test
    double tests_per_detected_case_at_marker = 0.0;
    bool meets_90_90_benchmark = false;           // sensitivity and specificity both >= 90%
    bool most_positives_are_false_alarms = false; // false-alarm share > 50% at the marker
};

/// The full bundle: characteristics, the translated performance at the
/// expected prevalence, the full sweep, and (optionally) the ROC curve.
struct Report {
    TestCharacteristics characteristics;
    TranslatedPerformance headline;
    PrevalenceCurve curve;
    std::optional<RocCurve> roc;
    ReportNarrative narrative;
};

inline Report build_report(const TestCharacteristics& chars, Probability marker_prevalence,
                           const PrevalenceGrid& grid = default_grid(),
                           std::optional<CostWeights> costs = {},
                           std::optional<RocCurve> roc = {}) {
    Report report{chars,
                  translate(chars, marker_prevalence, costs),
                  sweep(chars, grid, marker_prevalence, costs),
                  std::move(roc),
                  {}};

    double sens = chars.sensitivity().value();
    double spec = chars.specificity().value();
    if (!(sens == 0.0 && spec == 1.0)) {
        report.narrative.breakeven_prevalence = breakeven_prevalence(sens, spec).value();
    }
    report.narrative.tests_per_detected_case_at_marker = report.headline.tests_per_detected_case;
    report.narrative.meets_90_90_benchmark = sens >= 0.90 && spec >= 0.90;
    report.narrative.most_positives_are_false_alarms =
        report.headline.false_alarm_rate && *report.headline.false_alarm_rate > 0.5;
    return report;
}

namespace jsondetail {

using ordered_json = nlohmann::ordered_json;

/// JSON has no infinity; non-finite and undefined both serialize as null.
inline ordered_json number_or_null(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

inline ordered_json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline ordered_json interval_json(const std::optional<ConfidenceInterval>& ci) {
    if (!ci) return nullptr;
    return ordered_json{{"lower", ci->lower().value()},
                        {"upper", ci->upper().value()},
                        {"confidence_level", ci->confidence_level()}};
}

inline ordered_json characteristics_json(const TestCharacteristics& chars) {
    ordered_json j{{"sensitivity", chars.sensitivity().value()},
                   {"specificity", chars.specificity().value()},
                   {"sensitivity_ci", interval_json(chars.sensitivity_ci())},
                   {"specificity_ci", interval_json(chars.specificity_ci())}};
    if (chars.source_counts()) {
        const auto& cm = *chars.source_counts();
        j["source_counts"] = {{"true_positives", cm.true_positives},
                              {"false_positives", cm.false_positives},
                              {"false_negatives", cm.false_negatives},
                              {"true_negatives", cm.true_negatives}};
    } else {
        j["source_counts"] = nullptr;
    }
    return j;
}

inline ordered_json performance_json(const TranslatedPerformance& tp) {
    return ordered_json{{"prevalence", tp.prevalence},
                        {"ppv", number_or_null(tp.ppv)},
                        {"npv", number_or_null(tp.npv)},
                        {"false_alarm_rate", number_or_null(tp.false_alarm_rate)},
                        {"missed_case_rate", number_or_null(tp.missed_case_rate)},
                        {"tests_per_detected_case", number_or_null(tp.tests_per_detected_case)},
                        {"positive_test_rate", tp.positive_test_rate},
                        {"accuracy", tp.accuracy},
                        {"expected_cost", number_or_null(tp.expected_cost)}};
}

inline ordered_json cost_weights_json(const std::optional<CostWeights>& costs) {
    if (!costs) return nullptr;
    return ordered_json{{"cost_per_false_alarm", costs->cost_per_false_alarm},
                        {"cost_per_missed_case", costs->cost_per_missed_case}};
}

inline ordered_json curve_body_json(const PrevalenceCurve& curve) {
    ordered_json points = ordered_json::array();
    for (const auto& tp : curve.points) points.push_back(performance_json(tp));
    return ordered_json{
        {"marker_prevalence", number_or_null(curve.marker_prevalence)},
        {"cost_weights", cost_weights_json(curve.cost_weights)},
        {"points", std::move(points)}};
}

inline ordered_json roc_json(const RocCurve& roc) {
    ordered_json points = ordered_json::array();
    for (const auto& p : roc.points) {
        points.push_back({{"threshold", number_or_null(p.threshold)},
                          {"true_positive_rate", p.true_positive_rate},
                          {"false_positive_rate", p.false_positive_rate}});
    }
    return ordered_json{{"auc", roc.auc},
                        {"auc_ci", interval_json(roc.auc_ci)},
                        {"n_diseased", roc.n_diseased},
                        {"n_healthy", roc.n_healthy},
                        {"points", std::move(points)}};
}

}  // namespace jsondetail

/// Standalone JSON for a sweep, as emitted by the CLI's csv/json outputs.
inline std::string curve_to_json(const PrevalenceCurve& curve) {
    using jsondetail::ordered_json;
    ordered_json j{{"schema_version", kReportSchemaVersion},
                   {"characteristics", jsondetail::characteristics_json(curve.characteristics)}};
    ordered_json body = jsondetail::curve_body_json(curve);
    for (auto& [key, value] : body.items()) j[key] = value;
    return j.dump(2) + "\n";
}

/// Full-precision machine-readable report; undefined quantities are explicit nulls.
inline std::string report_to_json(const Report& report) {
    using jsondetail::ordered_json;
    ordered_json j{
        {"schema_version", kReportSchemaVersion},
        {"characteristics", jsondetail::characteristics_json(report.characteristics)},
        {"headline", jsondetail::performance_json(report.headline)},
        {"narrative",
         {{"breakeven_prevalence", jsondetail::number_or_null(report.narrative.breakeven_prevalence)},
          {"tests_per_detected_case_at_marker",
           jsondetail::number_or_null(report.narrative.tests_per_detected_case_at_marker)},
          {"meets_90_90_benchmark", report.narrative.meets_90_90_benchmark},
          {"most_positives_are_false_alarms", report.narrative.most_positives_are_false_alarms}}},
        {"curve", jsondetail::curve_body_json(report.curve)},
        {"roc", report.roc ? jsondetail::roc_json(*report.roc) : ordered_json(nullptr)}};
    return j.dump(2) + "\n";
}

namespace mddetail {

inline std::string percent_or_dash(const std::optional<double>& v) {
    return v ? format_percent(*v) : "-";
}

inline std::string whole_or_dash(double v) {
    return std::isfinite(v) ? format_whole(v) : "-";
}

inline std::string interval_percent(const ConfidenceInterval& ci) {
    return format_whole(ci.confidence_level() * 100.0) + "% CI: " +
           format_percent(ci.lower().value()) + " to " + format_percent(ci.upper().value());
}

}  // namespace mddetail

/// Human-readable summary. Prose uses display rounding: percentages to whole
/// percent, tests-per-case to the nearest whole number.
inline std::string report_to_markdown(const Report& report) {
    const auto& chars = report.characteristics;
    const auto& headline = report.headline;
    std::string marker_pct = format_percent(headline.prevalence);

    std::string md = "# Assay performance report\n\n";

    md += "## Test characteristics\n\n";
    md += "- Sensitivity: " + format_percent(chars.sensitivity().value());
    if (chars.sensitivity_ci()) md += " (" + mddetail::interval_percent(*chars.sensitivity_ci()) + ")";
    md += "\n";
    md += "- Specificity: " + format_percent(chars.specificity().value());
    if (chars.specificity_ci()) md += " (" + mddetail::interval_percent(*chars.specificity_ci()) + ")";
    md += "\n";
    if (chars.source_counts()) {
        const auto& cm = *chars.source_counts();
        md += "- Validation counts: " + std::to_string(cm.true_positives) + " TP, " +
              std::to_string(cm.false_positives) + " FP, " +
              std::to_string(cm.false_negatives) + " FN, " +
              std::to_string(cm.true_negatives) + " TN\n";
    }
    if (report.roc) {
        md += "- ROC AUC: " + format_fixed(report.roc->auc, 2);
        if (report.roc->auc_ci) {
            const auto& ci = *report.roc->auc_ci;
            md += " (" + format_whole(ci.confidence_level() * 100.0) + "% CI: " +
                  format_fixed(ci.lower().value(), 2) + ", " +
                  format_fixed(ci.upper().value(), 2) + ")";
        }
        md += "\n";
    }

    md += "\n## At the expected prevalence of " + marker_pct + "\n\n";
    if (headline.false_alarm_rate) {
        md += "- False alarms: " + format_percent(*headline.false_alarm_rate) +
              " of positive tests are false positives (PPV " +
              mddetail::percent_or_dash(headline.ppv) + ").\n";
    } else {
        md += "- False alarms: undefined (no positive tests occur at this prevalence).\n";
    }
    if (headline.missed_case_rate) {
        md += "- Missed cases: " + format_percent(*headline.missed_case_rate) +
              " of negative tests are false negatives (NPV " +
              mddetail::percent_or_dash(headline.npv) + ").\n";
    } else {
        md += "- Missed cases: undefined (no negative tests occur at this prevalence).\n";
    }
    md += "- Tests per detected case: " + mddetail::whole_or_dash(headline.tests_per_detected_case) +
          ".\n";
    md += "- Positive test rate: " + format_percent(headline.positive_test_rate) +
          "; overall accuracy: " + format_percent(headline.accuracy) + ".\n";
    if (headline.expected_cost) {
        md += "- Expected misclassification cost per person tested: " +
              format_double(*headline.expected_cost) + ".\n";
    }

    md += "\n## Robustness to prevalence\n\n";
    if (report.narrative.breakeven_prevalence) {
        md += "- Breakeven prevalence (PPV = 50%): " +
              format_percent(*report.narrative.breakeven_prevalence) +
              ". Below it, most positive tests are false alarms.\n";
    } else {
        md += "- No breakeven prevalence: this test never fires on disease.\n";
    }
    md += report.narrative.meets_90_90_benchmark
              ? "- Meets the 90%/90% sensitivity/specificity benchmark.\n"
              : "- Does not meet the 90%/90% sensitivity/specificity benchmark.\n";
    if (report.narrative.most_positives_are_false_alarms) {
        md += "- At the expected prevalence, most positive tests are false alarms.\n";
    }

    md += "\n## Across prevalences\n\n";
    md += "| Prevalence | False alarms | Missed cases | PPV | NPV | Tests per case |\n";
    md += "|---:|---:|---:|---:|---:|---:|\n";
    // Sample the curve near every 10% of prevalence.
    for (int pct = 0; pct <= 100; pct += 10) {
        double target = pct / 100.0;
        const TranslatedPerformance* nearest = nullptr;
        double best = 2.0;
        for (const auto& tp : report.curve.points) {
            double d = std::abs(tp.prevalence - target);
            if (d < best) { best = d; nearest = &tp; }
        }
        if (!nearest) continue;
        md += "| " + format_percent(nearest->prevalence) + " | " +
              mddetail::percent_or_dash(nearest->false_alarm_rate) + " | " +
              mddetail::percent_or_dash(nearest->missed_case_rate) + " | " +
              mddetail::percent_or_dash(nearest->ppv) + " | " +
              mddetail::percent_or_dash(nearest->npv) + " | " +
              mddetail::whole_or_dash(nearest->tests_per_detected_case) + " |\n";
    }
    return md;
}

}  // namespace prevplot
