#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "prevplot/errors.hpp"
#include "prevplot/format.hpp"
#include "prevplot/roc.hpp"
#include "prevplot/sweep.hpp"

namespace prevplot {

/// How to read scored samples out of a delimited text file.
///
/// With a header, score_column / label_column name header fields; without
/// one they are 0-based column indexes ("0", "1", ...). Fields are split on
/// the delimiter with surrounding whitespace trimmed; quoting is not
/// interpreted.
struct CsvIngestConfig {
    std::string score_column = "score";
    std::string label_column = "label";
    std::string positive_label = "1";
    char delimiter = ',';
    bool has_header = true;
    bool invert_scores = false;
};

namespace csvdetail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

inline std::size_t column_index(const std::vector<std::string_view>& header,
                                const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw MissingColumn("column '" + name + "' not found in header");
}

inline std::size_t numeric_index(const std::string& text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw MissingColumn("without a header, columns must be 0-based indexes; got '" + text +
                            "'");
    }
    return value;
}

}  // namespace csvdetail

/// Parse scored, labeled samples from delimited text. Rows whose label equals
/// positive_label are diseased, all others healthy. Errors are fatal and name
/// the offending 1-based line (the header counts as line 1).
inline std::vector<ScoredSample> parse_samples_csv(std::istream& in,
                                                   const CsvIngestConfig& config = {}) {
    if (config.score_column == config.label_column) {
        throw MissingColumn("score and label columns must differ");
    }

    std::size_t line_number = 0;
    std::string line;
    std::size_t score_idx = 0, label_idx = 0;

    if (config.has_header) {
        if (!std::getline(in, line)) {
            throw MissingColumn("input is empty; expected a header line");
        }
        ++line_number;
        auto header = csvdetail::split(line, config.delimiter);
        score_idx = csvdetail::column_index(header, config.score_column);
        label_idx = csvdetail::column_index(header, config.label_column);
    } else {
        score_idx = csvdetail::numeric_index(config.score_column);
        label_idx = csvdetail::numeric_index(config.label_column);
        if (score_idx == label_idx) {
            throw MissingColumn("score and label columns must differ");
        }
    }

    std::vector<ScoredSample> samples;
    std::size_t needed = std::max(score_idx, label_idx) + 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (csvdetail::trim(line).empty()) continue;
        auto fields = csvdetail::split(line, config.delimiter);
        if (fields.size() < needed) {
            throw MalformedRow(line_number, "expected at least " + std::to_string(needed) +
                                                " fields, got " + std::to_string(fields.size()));
        }
        std::string_view score_text = fields[score_idx];
        double score = 0.0;
        auto [ptr, ec] =
            std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
        if (ec != std::errc{} || ptr != score_text.data() + score_text.size() ||
            !std::isfinite(score)) {
            throw NonNumericScore(line_number, std::string(score_text));
        }
        if (config.invert_scores) score = -score;
        samples.push_back({score, fields[label_idx] == config.positive_label
                                      ? SampleLabel::diseased
                                      : SampleLabel::healthy});
    }
    return samples;
}

/// Serialize a sweep table as CSV. Undefined cells become empty fields,
/// infinities become "inf"; defined numbers keep full round-trip precision.
inline std::string curve_table_to_csv(const CurveTable& table) {
    std::string csv;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) csv += ',';
        csv += table.columns[i];
    }
    csv += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) csv += ',';
            if (row[i]) csv += format_double(*row[i]);
        }
        csv += '\n';
    }
    return csv;
}

}  // namespace prevplot
