#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "prevplot/metrics.hpp"

namespace prevplot {

enum class SampleLabel { healthy, diseased };

/// One assay readout with its true class. Higher score = more disease-like
/// by convention (negate scores upstream to flip the orientation).
struct ScoredSample {
    double score = 0.0;
    SampleLabel label = SampleLabel::healthy;
};

struct RocPoint {
    double threshold = 0.0;  // test-positive iff score >= threshold
    double true_positive_rate = 0.0;
    double false_positive_rate = 0.0;
};

/// Empirical ROC curve. Points run from (fpr 0, tpr 0) at threshold +inf
/// to (fpr 1, tpr 1) at the lowest observed score; both rates are
/// non-decreasing along the list.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
    std::optional<ConfidenceInterval> auc_ci;
    std::size_t n_diseased = 0;
    std::size_t n_healthy = 0;
};

namespace detail {

struct ClassCounts {
    std::size_t diseased = 0;
    std::size_t healthy = 0;
};

inline ClassCounts count_classes(std::span<const ScoredSample> samples) {
    ClassCounts c;
    for (const auto& s : samples) {
        if (!std::isfinite(s.score)) throw Error("sample scores must be finite");
        if (s.label == SampleLabel::diseased) ++c.diseased; else ++c.healthy;
    }
    return c;
}

}  // namespace detail

/// Trapezoidal area under the curve's ordered points.
inline double auc_trapezoid(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.false_positive_rate - a.false_positive_rate) *
                (a.true_positive_rate + b.true_positive_rate) / 2.0;
    }
    return area;
}

/// Build the empirical ROC curve: one point per distinct score, thresholds
/// descending, tied scores collapsed into a single step.
inline RocCurve empirical_roc(std::span<const ScoredSample> samples) {
    auto counts = detail::count_classes(samples);
    if (counts.diseased == 0 || counts.healthy == 0) throw OneClassOnly();

    std::vector<ScoredSample> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoredSample& a, const ScoredSample& b) { return a.score > b.score; });

    RocCurve curve;
    curve.n_diseased = counts.diseased;
    curve.n_healthy = counts.healthy;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

    double m = static_cast<double>(counts.diseased);
    double n = static_cast<double>(counts.healthy);
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < sorted.size()) {
        double threshold = sorted[i].score;
        while (i < sorted.size() && sorted[i].score == threshold) {
            if (sorted[i].label == SampleLabel::diseased) ++tp; else ++fp;
            ++i;
        }
        curve.points.push_back({threshold, static_cast<double>(tp) / m,
                                static_cast<double>(fp) / n});
    }
    curve.auc = auc_trapezoid(curve);
    return curve;
}

/// Mann-Whitney AUC: the probability a random diseased sample outscores a
/// random healthy one, ties counting half. Computed via midranks, so tied
/// scores earn exactly 0.5 pair-credit and the value matches the trapezoidal
/// area of the tie-collapsed empirical curve.
inline double auc_mann_whitney(std::span<const ScoredSample> samples) {
    auto counts = detail::count_classes(samples);
    if (counts.diseased == 0 || counts.healthy == 0) throw OneClassOnly();

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a].score < samples[b].score;
    });

    // Midranks: tied values all receive the average of their 1-based positions.
    double diseased_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && samples[order[j]].score == samples[order[i]].score) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (samples[order[k]].label == SampleLabel::diseased) diseased_rank_sum += midrank;
        }
        i = j;
    }

    double m = static_cast<double>(counts.diseased);
    double n = static_cast<double>(counts.healthy);
    double u = diseased_rank_sum - m * (m + 1.0) / 2.0;
    return u / (m * n);
}

/// DeLong variance of the Mann-Whitney AUC with a normal-approximation
/// interval, truncated to [0,1]. Perfectly separated classes give variance 0
/// and the degenerate interval [auc, auc].
inline ConfidenceInterval auc_ci_delong(std::span<const ScoredSample> samples,
                                        double confidence_level) {
    auto counts = detail::count_classes(samples);
    if (counts.diseased < 2 || counts.healthy < 2) throw TooFewSamples();

    std::vector<double> diseased, healthy;
    diseased.reserve(counts.diseased);
    healthy.reserve(counts.healthy);
    for (const auto& s : samples) {
        (s.label == SampleLabel::diseased ? diseased : healthy).push_back(s.score);
    }

    double theta = auc_mann_whitney(samples);
    double m = static_cast<double>(diseased.size());
    double n = static_cast<double>(healthy.size());

    // Placement values: v10[i] = mean over healthy of psi(x_i, y_j), and dually.
    std::vector<double> v10(diseased.size(), 0.0), v01(healthy.size(), 0.0);
    for (std::size_t i = 0; i < diseased.size(); ++i) {
        for (std::size_t j = 0; j < healthy.size(); ++j) {
            double psi = diseased[i] > healthy[j] ? 1.0
                       : diseased[i] < healthy[j] ? 0.0
                                                  : 0.5;
            v10[i] += psi;
            v01[j] += psi;
        }
    }
    double s10 = 0.0, s01 = 0.0;
    for (double& v : v10) { v /= n; s10 += (v - theta) * (v - theta); }
    for (double& v : v01) { v /= m; s01 += (v - theta) * (v - theta); }
    s10 /= m - 1.0;
    s01 /= n - 1.0;

    double variance = s10 / m + s01 / n;
    double half = two_sided_z(confidence_level) * std::sqrt(std::max(0.0, variance));
    double lower = std::clamp(theta - half, 0.0, 1.0);
    double upper = std::clamp(theta + half, 0.0, 1.0);
    return ConfidenceInterval(lower, upper, confidence_level);
}

/// The point maximizing Youden's J = tpr - fpr. Ties go to the lower
/// threshold (the more sensitive cutoff), then to the lower fpr.
inline RocPoint youden_optimal_point(const RocCurve& curve) {
    if (curve.points.empty()) throw EmptyCurve();
    const RocPoint* best = &curve.points.front();
    double best_j = best->true_positive_rate - best->false_positive_rate;
    for (const auto& p : curve.points) {
        double j = p.true_positive_rate - p.false_positive_rate;
        if (j > best_j ||
            (j == best_j && (p.threshold < best->threshold ||
                             (p.threshold == best->threshold &&
                              p.false_positive_rate < best->false_positive_rate)))) {
            best = &p;
            best_j = j;
        }
    }
    return *best;
}

/// Re-count the confusion matrix at the point's threshold and summarize it,
/// bridging ROC analysis into the prevalence-dependent world.
inline TestCharacteristics characteristics_at_point(const RocPoint& point,
                                                    std::span<const ScoredSample> samples,
                                                    double confidence_level = 0.95) {
    ConfusionMatrix cm;
    for (const auto& s : samples) {
        bool positive = s.score >= point.threshold;
        if (s.label == SampleLabel::diseased) {
            positive ? ++cm.true_positives : ++cm.false_negatives;
        } else {
            positive ? ++cm.false_positives : ++cm.true_negatives;
        }
    }
    return characteristics_from_matrix(cm, confidence_level);
}

}  // namespace prevplot
