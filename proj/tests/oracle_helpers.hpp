#pragma once

// Independent oracles used by the tests: brute-force and enumeration
// computations that deliberately avoid the library's own code paths.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "prevplot/roc.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Expected-count translation over a hypothetical population: the Bayes
// formulas re-derived by literally counting expected patients.
// ---------------------------------------------------------------------------

struct ExpectedCounts {
    double tp, fp, fn, tn;
};

inline ExpectedCounts expected_counts(double sens, double spec, double prev,
                                      double population = 1e6) {
    double diseased = prev * population;
    double healthy = population - diseased;
    return {sens * diseased, (1.0 - spec) * healthy, (1.0 - sens) * diseased, spec * healthy};
}

inline double ppv_from_counts(double sens, double spec, double prev) {
    auto c = expected_counts(sens, spec, prev);
    return c.tp / (c.tp + c.fp);
}

inline double npv_from_counts(double sens, double spec, double prev) {
    auto c = expected_counts(sens, spec, prev);
    return c.tn / (c.tn + c.fn);
}

/// Solve ppv(p) == 0.5 by bisection on the expected-count PPV (increasing in p).
inline double breakeven_by_bisection(double sens, double spec) {
    double lo = 1e-15, hi = 1.0 - 1e-15;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2.0;
        if (ppv_from_counts(sens, spec, mid) < 0.5) lo = mid; else hi = mid;
    }
    return (lo + hi) / 2.0;
}

// ---------------------------------------------------------------------------
// ROC oracles.
// ---------------------------------------------------------------------------

/// O(diseased x healthy) pair-counting AUC: 1 per win, 0.5 per tie.
inline double auc_pair_count(const std::vector<prevplot::ScoredSample>& samples) {
    std::vector<double> diseased, healthy;
    for (const auto& s : samples) {
        (s.label == prevplot::SampleLabel::diseased ? diseased : healthy).push_back(s.score);
    }
    double credit = 0.0;
    for (double d : diseased) {
        for (double h : healthy) {
            if (d > h) credit += 1.0;
            else if (d == h) credit += 0.5;
        }
    }
    return credit / (static_cast<double>(diseased.size()) * static_cast<double>(healthy.size()));
}

/// Exhaustive thresholding: one ROC point per distinct score, recounted from
/// scratch at every threshold with the score >= threshold convention.
inline std::vector<prevplot::RocPoint> roc_by_enumeration(
    const std::vector<prevplot::ScoredSample>& samples) {
    std::vector<double> thresholds;
    for (const auto& s : samples) thresholds.push_back(s.score);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    double m = 0.0, n = 0.0;
    for (const auto& s : samples) {
        (s.label == prevplot::SampleLabel::diseased ? m : n) += 1.0;
    }

    std::vector<prevplot::RocPoint> points;
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    for (double t : thresholds) {
        double tp = 0.0, fp = 0.0;
        for (const auto& s : samples) {
            if (s.score >= t) {
                (s.label == prevplot::SampleLabel::diseased ? tp : fp) += 1.0;
            }
        }
        points.push_back({t, tp / m, fp / n});
    }
    return points;
}

/// Scan every point for the max of tpr - fpr; ties prefer the lower
/// threshold, then the lower fpr.
inline prevplot::RocPoint youden_by_scan(const std::vector<prevplot::RocPoint>& points) {
    prevplot::RocPoint best = points.front();
    double best_j = best.true_positive_rate - best.false_positive_rate;
    for (const auto& p : points) {
        double j = p.true_positive_rate - p.false_positive_rate;
        bool better = j > best_j;
        if (j == best_j) {
            better = p.threshold < best.threshold ||
                     (p.threshold == best.threshold &&
                      p.false_positive_rate < best.false_positive_rate);
        }
        if (better) { best = p; best_j = j; }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Randomized inputs.
// ---------------------------------------------------------------------------

inline double uniform01(std::mt19937& rng) {
    return (static_cast<double>(rng()) + 0.5) / 4294967296.0;
}

/// Deterministic standard normal draw (Box-Muller on raw 32-bit uniforms).
inline double std_normal(std::mt19937& rng) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

/// Random scored samples; roughly tie_fraction of the scores come from a
/// small shared integer pool so ties occur both within and across classes.
inline std::vector<prevplot::ScoredSample> random_samples(std::mt19937& rng,
                                                          std::size_t n_diseased,
                                                          std::size_t n_healthy,
                                                          double tie_fraction = 0.3,
                                                          double separation = 0.8) {
    std::vector<prevplot::ScoredSample> samples;
    samples.reserve(n_diseased + n_healthy);
    auto draw = [&](bool diseased) {
        if (uniform01(rng) < tie_fraction) {
            return static_cast<double>(rng() % 5);
        }
        return uniform01(rng) * 5.0 + (diseased ? separation : 0.0);
    };
    for (std::size_t i = 0; i < n_diseased; ++i) {
        samples.push_back({draw(true), prevplot::SampleLabel::diseased});
    }
    for (std::size_t i = 0; i < n_healthy; ++i) {
        samples.push_back({draw(false), prevplot::SampleLabel::healthy});
    }
    return samples;
}

/// Random strictly increasing piecewise-linear map (slopes in [0.2, 3]).
struct MonotoneMap {
    std::vector<double> breaks;  // ascending
    std::vector<double> slopes;  // one per segment, slopes[i] right of breaks[i]
    double offset;

    double operator()(double x) const {
        if (x < breaks.front()) return offset + slopes.front() * (x - breaks.front());
        double y = offset;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            if (x >= breaks[i + 1]) {
                y += slopes[i] * (breaks[i + 1] - breaks[i]);
            } else {
                return y + slopes[i] * (x - breaks[i]);
            }
        }
        return y + slopes.back() * (x - breaks.back());
    }
};

inline MonotoneMap random_monotone_map(std::mt19937& rng) {
    MonotoneMap map;
    map.offset = uniform01(rng) * 10.0 - 5.0;
    for (int i = 0; i < 4; ++i) map.breaks.push_back(uniform01(rng) * 8.0 - 1.0);
    std::sort(map.breaks.begin(), map.breaks.end());
    for (int i = 0; i < 4; ++i) map.slopes.push_back(0.2 + uniform01(rng) * 2.8);
    return map;
}

// ---------------------------------------------------------------------------
// Minimal XML well-formedness check (tags balanced, one root element).
// ---------------------------------------------------------------------------

inline bool xml_well_formed(const std::string& doc, std::string* root_name = nullptr) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    std::size_t root_count = 0;
    bool seen_root = false;

    auto fail = [] { return false; };

    while (i < doc.size()) {
        if (doc[i] != '<') { ++i; continue; }
        if (doc.compare(i, 2, "<?") == 0) {
            std::size_t end = doc.find("?>", i);
            if (end == std::string::npos) return fail();
            i = end + 2;
            continue;
        }
        if (doc.compare(i, 4, "<!--") == 0) {
            std::size_t end = doc.find("-->", i);
            if (end == std::string::npos) return fail();
            i = end + 3;
            continue;
        }
        bool closing = doc.compare(i, 2, "</") == 0;
        std::size_t name_start = i + (closing ? 2 : 1);
        std::size_t j = name_start;
        while (j < doc.size() && (std::isalnum(static_cast<unsigned char>(doc[j])) ||
                                  doc[j] == '-' || doc[j] == '_' || doc[j] == ':')) {
            ++j;
        }
        if (j == name_start) return fail();
        std::string name = doc.substr(name_start, j - name_start);

        // Scan to the closing '>', honoring quoted attribute values.
        char quote = 0;
        bool self_closing = false;
        while (j < doc.size()) {
            char c = doc[j];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                self_closing = doc[j - 1] == '/';
                break;
            }
            ++j;
        }
        if (j >= doc.size()) return fail();
        i = j + 1;

        if (closing) {
            if (stack.empty() || stack.back() != name) return fail();
            stack.pop_back();
        } else if (!self_closing) {
            if (stack.empty()) {
                ++root_count;
                if (!seen_root && root_name) *root_name = name;
                seen_root = true;
            }
            stack.push_back(name);
        } else if (stack.empty()) {
            ++root_count;
        }
    }
    return stack.empty() && root_count == 1;
}

// ---------------------------------------------------------------------------
// SVG element inspection helpers (plain text scanning).
// ---------------------------------------------------------------------------

/// Full text of the element carrying the given id, from '<' to '>'.
inline std::string find_element_by_id(const std::string& svg, const std::string& id) {
    std::string needle = "id=\"" + id + "\"";
    std::size_t pos = svg.find(needle);
    if (pos == std::string::npos) return {};
    std::size_t start = svg.rfind('<', pos);
    std::size_t end = svg.find('>', pos);
    if (start == std::string::npos || end == std::string::npos) return {};
    return svg.substr(start, end - start + 1);
}

inline std::string attribute_value(const std::string& element, const std::string& name) {
    std::string needle = name + "=\"";
    std::size_t pos = element.find(needle);
    if (pos == std::string::npos) return {};
    std::size_t start = pos + needle.size();
    std::size_t end = element.find('"', start);
    if (end == std::string::npos) return {};
    return element.substr(start, end - start);
}

inline std::vector<std::pair<double, double>> parse_polyline_points(const std::string& attr) {
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0;
    while (i < attr.size()) {
        std::size_t comma = attr.find(',', i);
        if (comma == std::string::npos) break;
        std::size_t space = attr.find(' ', comma);
        if (space == std::string::npos) space = attr.size();
        out.emplace_back(std::stod(attr.substr(i, comma - i)),
                         std::stod(attr.substr(comma + 1, space - comma - 1)));
        i = space + 1;
    }
    return out;
}

}  // namespace oracle
