#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>

#include "prevplot/errors.hpp"
#include "prevplot/normal.hpp"

namespace prevplot {

/// Tolerance for closed-form probability identities (PPV + false-alarm rate == 1,
/// PPV at the breakeven prevalence == 0.5, and so on). Used throughout.
inline constexpr double kProbabilityTolerance = 1e-12;

/// A real number confined to [0,1]. Construction outside that range (or from NaN) throws.
class Probability {
public:
    Probability(double value) : value_(value) {  // NOLINT: implicit by design
        if (!(value >= 0.0 && value <= 1.0)) {
            throw InvalidProbability("probability must lie in [0,1]");
        }
    }

    double value() const { return value_; }

    friend auto operator<=>(const Probability&, const Probability&) = default;

private:
    double value_;
};

/// Outcome counts from a validation study.
struct ConfusionMatrix {
    std::uint64_t true_positives = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t false_negatives = 0;
    std::uint64_t true_negatives = 0;

    std::uint64_t diseased_total() const { return true_positives + false_negatives; }
    std::uint64_t healthy_total() const { return false_positives + true_negatives; }
    std::uint64_t total() const { return diseased_total() + healthy_total(); }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

class ConfidenceInterval {
public:
    ConfidenceInterval(Probability lower, Probability upper, double confidence_level)
        : lower_(lower), upper_(upper), confidence_level_(confidence_level) {
        if (lower.value() > upper.value()) {
            throw InvalidInterval("interval lower bound exceeds upper bound");
        }
        if (!(confidence_level > 0.0 && confidence_level < 1.0)) {
            throw InvalidInterval("confidence level must lie strictly inside (0,1)");
        }
    }

    Probability lower() const { return lower_; }
    Probability upper() const { return upper_; }
    double confidence_level() const { return confidence_level_; }

    bool contains(double p) const { return lower_.value() <= p && p <= upper_.value(); }
    double width() const { return upper_.value() - lower_.value(); }

private:
    Probability lower_;
    Probability upper_;
    double confidence_level_;
};

/// The prevalence-independent summary of an assay: sensitivity and specificity,
/// optionally with confidence intervals and the counts they came from.
class TestCharacteristics {
public:
    TestCharacteristics(Probability sensitivity, Probability specificity,
                        std::optional<ConfidenceInterval> sensitivity_ci = {},
                        std::optional<ConfidenceInterval> specificity_ci = {},
                        std::optional<ConfusionMatrix> source_counts = {})
        : sensitivity_(sensitivity),
          specificity_(specificity),
          sensitivity_ci_(sensitivity_ci),
          specificity_ci_(specificity_ci),
          source_counts_(source_counts) {
        if (sensitivity_ci && !sensitivity_ci->contains(sensitivity.value())) {
            throw InvalidCharacteristics("sensitivity CI does not contain the point estimate");
        }
        if (specificity_ci && !specificity_ci->contains(specificity.value())) {
            throw InvalidCharacteristics("specificity CI does not contain the point estimate");
        }
        if (source_counts) {
            const auto& cm = *source_counts;
            if (cm.diseased_total() == 0) throw NoDiseasedSamples();
            if (cm.healthy_total() == 0) throw NoHealthySamples();
            double sens_from_counts =
                static_cast<double>(cm.true_positives) / static_cast<double>(cm.diseased_total());
            double spec_from_counts =
                static_cast<double>(cm.true_negatives) / static_cast<double>(cm.healthy_total());
            if (std::abs(sens_from_counts - sensitivity.value()) > kProbabilityTolerance ||
                std::abs(spec_from_counts - specificity.value()) > kProbabilityTolerance) {
                throw InvalidCharacteristics("sensitivity/specificity disagree with source counts");
            }
        }
    }

    Probability sensitivity() const { return sensitivity_; }
    Probability specificity() const { return specificity_; }
    const std::optional<ConfidenceInterval>& sensitivity_ci() const { return sensitivity_ci_; }
    const std::optional<ConfidenceInterval>& specificity_ci() const { return specificity_ci_; }
    const std::optional<ConfusionMatrix>& source_counts() const { return source_counts_; }

private:
    Probability sensitivity_;
    Probability specificity_;
    std::optional<ConfidenceInterval> sensitivity_ci_;
    std::optional<ConfidenceInterval> specificity_ci_;
    std::optional<ConfusionMatrix> source_counts_;
};

/// Per-person misclassification costs in user-chosen (relative) units.
struct CostWeights {
    double cost_per_false_alarm = 0.0;
    double cost_per_missed_case = 0.0;
};

/// Everything prevalence-dependent about an assay, evaluated at one prevalence.
///
/// Fields whose defining ratio is 0/0 at this prevalence are left unset rather
/// than carrying a NaN: at prevalence 0 a perfectly specific test produces no
/// positive tests at all, so "share of positives that are false" has no value.
struct TranslatedPerformance {
    double prevalence = 0.0;
    std::optional<double> ppv;
    std::optional<double> npv;
    std::optional<double> false_alarm_rate;  // share of positive tests that are false
    std::optional<double> missed_case_rate;  // share of negative tests that are false
    double tests_per_detected_case = 0.0;    // +infinity when sens * prev == 0
    double positive_test_rate = 0.0;
    double accuracy = 0.0;
    std::optional<double> expected_cost;     // set when cost weights were supplied
};

namespace detail {

inline std::optional<double> ppv_or_undefined(double sens, double spec, double prev) {
    double positive_rate = sens * prev + (1.0 - spec) * (1.0 - prev);
    if (positive_rate <= 0.0) return std::nullopt;
    return sens * prev / positive_rate;
}

inline std::optional<double> npv_or_undefined(double sens, double spec, double prev) {
    double negative_rate = spec * (1.0 - prev) + (1.0 - sens) * prev;
    if (negative_rate <= 0.0) return std::nullopt;
    return spec * (1.0 - prev) / negative_rate;
}

}  // namespace detail

/// tp / (tp + fn).
inline Probability sensitivity_of(const ConfusionMatrix& cm) {
    if (cm.diseased_total() == 0) throw NoDiseasedSamples();
    return static_cast<double>(cm.true_positives) / static_cast<double>(cm.diseased_total());
}

/// tn / (tn + fp).
inline Probability specificity_of(const ConfusionMatrix& cm) {
    if (cm.healthy_total() == 0) throw NoHealthySamples();
    return static_cast<double>(cm.true_negatives) / static_cast<double>(cm.healthy_total());
}

/// Positive predictive value by Bayes:
///   sens*prev / (sens*prev + (1-spec)*(1-prev)).
inline Probability ppv_at(Probability sens, Probability spec, Probability prev) {
    auto ppv = detail::ppv_or_undefined(sens.value(), spec.value(), prev.value());
    if (!ppv) throw NoPositiveTests();
    return *ppv;
}

/// Negative predictive value:
///   spec*(1-prev) / (spec*(1-prev) + (1-sens)*prev).
inline Probability npv_at(Probability sens, Probability spec, Probability prev) {
    auto npv = detail::npv_or_undefined(sens.value(), spec.value(), prev.value());
    if (!npv) throw NoNegativeTests();
    return *npv;
}

/// Share of positive tests that are false positives: 1 - PPV.
inline Probability false_alarm_rate_at(Probability sens, Probability spec, Probability prev) {
    return 1.0 - ppv_at(sens, spec, prev).value();
}

/// Share of negative tests that are false negatives: 1 - NPV.
inline Probability missed_case_rate_at(Probability sens, Probability spec, Probability prev) {
    return 1.0 - npv_at(sens, spec, prev).value();
}

/// Expected number of people tested per true case found: 1 / (sens * prev).
/// Returned at full precision; display code rounds (17.18 shows as "17").
inline double tests_per_detected_case(Probability sens, Probability prev) {
    double detection_rate = sens.value() * prev.value();
    if (detection_rate <= 0.0) throw NoDetectableCases();
    return 1.0 / detection_rate;
}

/// The prevalence at which PPV crosses 0.5: (1-spec) / ((1-spec) + sens).
/// Below it, most positive tests are false alarms.
inline Probability breakeven_prevalence(Probability sens, Probability spec) {
    double false_positive_rate = 1.0 - spec.value();
    if (sens.value() + false_positive_rate <= 0.0) throw DegenerateTest();
    return false_positive_rate / (false_positive_rate + sens.value());
}

/// Wilson score interval for a binomial proportion.
/// The bounds are exact at the boundary cases: zero successes pins the lower
/// bound to 0, all successes pins the upper bound to 1.
inline ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double confidence_level) {
    if (trials == 0) throw NoTrials();
    if (successes > trials) throw InvalidInterval("successes exceed trials");

    double z = two_sided_z(confidence_level);
    double n = static_cast<double>(trials);
    double p_hat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p_hat + z2 / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));

    double lower = successes == 0 ? 0.0 : std::max(0.0, center - half);
    double upper = successes == trials ? 1.0 : std::min(1.0, center + half);
    return ConfidenceInterval(lower, upper, confidence_level);
}

/// Bundle sensitivity, specificity and their Wilson intervals from study counts.
inline TestCharacteristics characteristics_from_matrix(const ConfusionMatrix& cm,
                                                       double confidence_level = 0.95) {
    Probability sens = sensitivity_of(cm);
    Probability spec = specificity_of(cm);
    return TestCharacteristics(
        sens, spec,
        wilson_interval(cm.true_positives, cm.diseased_total(), confidence_level),
        wilson_interval(cm.true_negatives, cm.healthy_total(), confidence_level), cm);
}

/// Evaluate every prevalence-dependent quantity at one prevalence.
/// Never throws for in-range inputs: ratios that are 0/0 here come back unset.
inline TranslatedPerformance translate(const TestCharacteristics& chars, Probability prev,
                                       const std::optional<CostWeights>& costs = {}) {
    double sens = chars.sensitivity().value();
    double spec = chars.specificity().value();
    double p = prev.value();

    TranslatedPerformance out;
    out.prevalence = p;
    out.ppv = detail::ppv_or_undefined(sens, spec, p);
    out.npv = detail::npv_or_undefined(sens, spec, p);
    if (out.ppv) out.false_alarm_rate = 1.0 - *out.ppv;
    if (out.npv) out.missed_case_rate = 1.0 - *out.npv;
    out.tests_per_detected_case =
        sens * p > 0.0 ? 1.0 / (sens * p) : std::numeric_limits<double>::infinity();
    out.positive_test_rate = sens * p + (1.0 - spec) * (1.0 - p);
    out.accuracy = sens * p + spec * (1.0 - p);
    if (costs) {
        if (costs->cost_per_false_alarm < 0.0 || costs->cost_per_missed_case < 0.0) {
            throw InvalidCostWeights("cost weights must be non-negative");
        }
        out.expected_cost = (1.0 - spec) * (1.0 - p) * costs->cost_per_false_alarm +
                            (1.0 - sens) * p * costs->cost_per_missed_case;
    }
    return out;
}

}  // namespace prevplot
