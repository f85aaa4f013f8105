#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prevplot/metrics.hpp"

namespace prevplot {

inline constexpr std::size_t kDefaultGridSteps = 101;

/// An increasing set of prevalences to evaluate, endpoints included.
class PrevalenceGrid {
public:
    /// Linear grid from start to end (inclusive) with the given number of points.
    PrevalenceGrid(Probability start, Probability end, std::size_t steps) {
        if (steps < 2) throw InvalidGrid("grid needs at least 2 points");
        if (!(start.value() < end.value())) throw InvalidGrid("grid start must be below end");
        points_.reserve(steps);
        double span = end.value() - start.value();
        for (std::size_t i = 0; i + 1 < steps; ++i) {
            points_.push_back(start.value() +
                              (static_cast<double>(i) * span) / static_cast<double>(steps - 1));
        }
        points_.push_back(end.value());
    }

    /// Explicit grid, e.g. a hand-picked set of rare-disease prevalences.
    static PrevalenceGrid from_points(std::vector<double> points) {
        if (points.size() < 2) throw InvalidGrid("grid needs at least 2 points");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!(points[i] >= 0.0 && points[i] <= 1.0)) {
                throw InvalidGrid("grid points must lie in [0,1]");
            }
            if (i > 0 && !(points[i - 1] < points[i])) {
                throw InvalidGrid("grid points must be strictly increasing");
            }
        }
        return PrevalenceGrid(std::move(points), ExplicitTag{});
    }

    const std::vector<double>& points() const { return points_; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }

private:
    struct ExplicitTag {};
    PrevalenceGrid(std::vector<double> points, ExplicitTag) : points_(std::move(points)) {}

    std::vector<double> points_;
};

inline PrevalenceGrid default_grid() { return PrevalenceGrid(0.0, 1.0, kDefaultGridSteps); }

/// A full prevalence sweep of one assay, ready for tabulation or plotting.
struct PrevalenceCurve {
    TestCharacteristics characteristics;
    std::vector<TranslatedPerformance> points;   // ordered by increasing prevalence
    std::optional<double> marker_prevalence;     // e.g. the best estimate for the clinic
    std::optional<CostWeights> cost_weights;
};

/// Expected misclassification cost per person tested:
///   (1-spec)*(1-prev)*cost_fa + (1-sens)*prev*cost_md.
inline double expected_cost_per_person(const TestCharacteristics& chars, Probability prev,
                                       const CostWeights& costs) {
    if (costs.cost_per_false_alarm < 0.0 || costs.cost_per_missed_case < 0.0) {
        throw InvalidCostWeights("cost weights must be non-negative");
    }
    double sens = chars.sensitivity().value();
    double spec = chars.specificity().value();
    double p = prev.value();
    return (1.0 - spec) * (1.0 - p) * costs.cost_per_false_alarm +
           (1.0 - sens) * p * costs.cost_per_missed_case;
}

/// Evaluate the assay at every grid point. Deterministic: same inputs, same curve.
inline PrevalenceCurve sweep(const TestCharacteristics& chars, const PrevalenceGrid& grid,
                             std::optional<Probability> marker = {},
                             std::optional<CostWeights> costs = {}) {
    if (marker &&
        !(grid.front() <= marker->value() && marker->value() <= grid.back())) {
        throw InvalidGrid("marker prevalence lies outside the grid range");
    }
    PrevalenceCurve curve{chars, {}, {}, costs};
    curve.points.reserve(grid.points().size());
    for (double p : grid.points()) {
        curve.points.push_back(translate(chars, p, costs));
    }
    if (marker) curve.marker_prevalence = marker->value();
    return curve;
}

/// (prevalence, expected cost) pairs across the grid. Affine in prevalence.
inline std::vector<std::pair<double, double>> cost_curve(const TestCharacteristics& chars,
                                                         const PrevalenceGrid& grid,
                                                         const CostWeights& costs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.points().size());
    for (double p : grid.points()) {
        out.emplace_back(p, expected_cost_per_person(chars, p, costs));
    }
    return out;
}

/// Column-ordered numeric table; an unset cell means "undefined here" and must
/// be serialized as an empty marker, never as 0.
struct CurveTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

inline CurveTable curve_to_table(const PrevalenceCurve& curve) {
    CurveTable table;
    table.columns = {"prevalence",       "ppv",
                     "npv",              "false_alarm_rate",
                     "missed_case_rate", "tests_per_detected_case",
                     "positive_test_rate", "accuracy"};
    bool with_cost = curve.cost_weights.has_value();
    if (with_cost) table.columns.push_back("expected_cost");
    table.rows.reserve(curve.points.size());
    for (const auto& tp : curve.points) {
        std::vector<std::optional<double>> row = {
            tp.prevalence,       tp.ppv,
            tp.npv,              tp.false_alarm_rate,
            tp.missed_case_rate, tp.tests_per_detected_case,
            tp.positive_test_rate, tp.accuracy};
        if (with_cost) row.push_back(tp.expected_cost);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace prevplot
