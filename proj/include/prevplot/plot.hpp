#pragma once

#include <optional>
#include <string>

#include "prevplot/format.hpp"
#include "prevplot/roc.hpp"
#include "prevplot/sweep.hpp"

namespace prevplot {

struct PlotOptions {
    int width_px = 720;
    int height_px = 480;
    std::string title;
    std::string x_label;   // empty = plot-specific default
    std::string y_label;
    bool show_marker = true;
    bool percent_axes = true;  // label axes 0-100% instead of 0-1
};

/// Affine map between data space ([0,1] on both axes) and pixel space.
/// Exposed so callers can invert rendered coordinates back to data values.
struct PlotGeometry {
    double px_left = 0.0;
    double px_top = 0.0;
    double px_width = 0.0;
    double px_height = 0.0;

    double x_to_px(double x) const { return px_left + x * px_width; }
    double y_to_px(double y) const { return px_top + (1.0 - y) * px_height; }
    double px_to_x(double px) const { return (px - px_left) / px_width; }
    double px_to_y(double px) const { return 1.0 - (px - px_top) / px_height; }
};

namespace plotdetail {

inline constexpr double kMarginLeft = 64.0;
inline constexpr double kMarginRight = 20.0;
inline constexpr double kMarginTop = 44.0;
inline constexpr double kMarginBottom = 52.0;

inline std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string px(double v) { return format_fixed(v, 2); }

inline void append_header(std::string& svg, const PlotOptions& opts) {
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width_px) +
           "\" height=\"" + std::to_string(opts.height_px) + "\" viewBox=\"0 0 " +
           std::to_string(opts.width_px) + " " + std::to_string(opts.height_px) + "\">\n";
    svg += "<rect width=\"" + std::to_string(opts.width_px) + "\" height=\"" +
           std::to_string(opts.height_px) + "\" fill=\"#ffffff\"/>\n";
    if (!opts.title.empty()) {
        svg += "<text x=\"" + px(opts.width_px / 2.0) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
               "fill=\"#222222\">" +
               escape_xml(opts.title) + "</text>\n";
    }
}

inline void append_axes(std::string& svg, const PlotGeometry& g, const PlotOptions& opts,
                        const std::string& x_label, const std::string& y_label) {
    svg += "<rect x=\"" + px(g.px_left) + "\" y=\"" + px(g.px_top) + "\" width=\"" +
           px(g.px_width) + "\" height=\"" + px(g.px_height) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        double v = static_cast<double>(i) / 5.0;
        std::string label = opts.percent_axes ? format_whole(v * 100.0) : format_fixed(v, 1);
        double x = g.x_to_px(v);
        double y_base = g.px_top + g.px_height;
        svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(y_base) + "\" x2=\"" + px(x) + "\" y2=\"" +
               px(y_base + 5.0) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + px(x) + "\" y=\"" + px(y_base + 18.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#333333\">" + label + "</text>\n";

        double y = g.y_to_px(v);
        svg += "<line x1=\"" + px(g.px_left - 5.0) + "\" y1=\"" + px(y) + "\" x2=\"" +
               px(g.px_left) + "\" y2=\"" + px(y) +
               "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + px(g.px_left - 8.0) + "\" y=\"" + px(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#333333\">" + label + "</text>\n";
    }

    svg += "<text x=\"" + px(g.px_left + g.px_width / 2.0) + "\" y=\"" +
           px(g.px_top + g.px_height + 38.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#222222\">" + escape_xml(x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + px(g.px_top + g.px_height / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#222222\" transform=\"rotate(-90 18 " + px(g.px_top + g.px_height / 2.0) +
           ")\">" + escape_xml(y_label) + "</text>\n";
}

}  // namespace plotdetail

inline PlotGeometry plot_geometry(const PlotOptions& opts) {
    if (opts.width_px < 100 || opts.height_px < 100) {
        throw InvalidPlotOptions("plot must be at least 100x100 px");
    }
    PlotGeometry g;
    g.px_left = plotdetail::kMarginLeft;
    g.px_top = plotdetail::kMarginTop;
    g.px_width = opts.width_px - plotdetail::kMarginLeft - plotdetail::kMarginRight;
    g.px_height = opts.height_px - plotdetail::kMarginTop - plotdetail::kMarginBottom;
    return g;
}

/// Render the false-alarm and missed-case series against prevalence as a
/// standalone SVG document. Undefined values (0/0 ratios at the prevalence
/// endpoints) are left out of the polylines rather than drawn as zero.
inline std::string render_prevalence_plot(const PrevalenceCurve& curve,
                                          const PlotOptions& opts = {}) {
    PlotGeometry g = plot_geometry(opts);
    if (curve.points.size() < 2) throw EmptyCurve();

    auto polyline_points = [&](auto field) {
        std::string pts;
        for (const auto& tp : curve.points) {
            const std::optional<double>& v = tp.*field;
            if (!v) continue;
            if (!pts.empty()) pts += ' ';
            pts += plotdetail::px(g.x_to_px(tp.prevalence)) + ',' + plotdetail::px(g.y_to_px(*v));
        }
        return pts;
    };

    std::string svg;
    plotdetail::append_header(svg, opts);
    plotdetail::append_axes(
        svg, g, opts,
        opts.x_label.empty() ? (opts.percent_axes ? "Prevalence (%)" : "Prevalence") : opts.x_label,
        opts.y_label.empty() ? (opts.percent_axes ? "Share of tests (%)" : "Share of tests")
                             : opts.y_label);

    if (opts.show_marker && curve.marker_prevalence) {
        double x = g.x_to_px(*curve.marker_prevalence);
        svg += "<line id=\"prevalence-marker\" x1=\"" + plotdetail::px(x) + "\" y1=\"" +
               plotdetail::px(g.px_top) + "\" x2=\"" + plotdetail::px(x) + "\" y2=\"" +
               plotdetail::px(g.px_top + g.px_height) +
               "\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
        std::string label = opts.percent_axes ? format_percent(*curve.marker_prevalence)
                                              : format_fixed(*curve.marker_prevalence, 2);
        svg += "<text x=\"" + plotdetail::px(x + 4.0) + "\" y=\"" +
               plotdetail::px(g.px_top + 14.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">" + label +
               "</text>\n";
    }

    svg += "<polyline id=\"false-alarm-rate\" fill=\"none\" stroke=\"#d62728\" "
           "stroke-width=\"2\" points=\"" +
           polyline_points(&TranslatedPerformance::false_alarm_rate) + "\"/>\n";
    svg += "<polyline id=\"missed-case-rate\" fill=\"none\" stroke=\"#1f77b4\" "
           "stroke-width=\"2\" points=\"" +
           polyline_points(&TranslatedPerformance::missed_case_rate) + "\"/>\n";

    // Legend, top-left of the data area.
    double lx = g.px_left + 12.0, ly = g.px_top + 16.0;
    svg += "<line x1=\"" + plotdetail::px(lx) + "\" y1=\"" + plotdetail::px(ly) + "\" x2=\"" +
           plotdetail::px(lx + 22.0) + "\" y2=\"" + plotdetail::px(ly) +
           "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + plotdetail::px(lx + 28.0) + "\" y=\"" + plotdetail::px(ly + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">False alarms"
           "</text>\n";
    svg += "<line x1=\"" + plotdetail::px(lx) + "\" y1=\"" + plotdetail::px(ly + 18.0) +
           "\" x2=\"" + plotdetail::px(lx + 22.0) + "\" y2=\"" + plotdetail::px(ly + 18.0) +
           "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + plotdetail::px(lx + 28.0) + "\" y=\"" + plotdetail::px(ly + 22.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">Missed cases"
           "</text>\n";

    svg += "</svg>\n";
    return svg;
}

/// Render the ROC polyline plus the chance diagonal, with the AUC (and its
/// interval, when present) printed in a text annotation.
inline std::string render_roc_plot(const RocCurve& roc, const PlotOptions& opts = {}) {
    PlotGeometry g = plot_geometry(opts);

    std::string svg;
    plotdetail::append_header(svg, opts);
    plotdetail::append_axes(
        svg, g, opts,
        opts.x_label.empty()
            ? (opts.percent_axes ? "False positive rate (%)" : "False positive rate")
            : opts.x_label,
        opts.y_label.empty()
            ? (opts.percent_axes ? "True positive rate (%)" : "True positive rate")
            : opts.y_label);

    svg += "<line id=\"chance-diagonal\" x1=\"" + plotdetail::px(g.x_to_px(0.0)) + "\" y1=\"" +
           plotdetail::px(g.y_to_px(0.0)) + "\" x2=\"" + plotdetail::px(g.x_to_px(1.0)) +
           "\" y2=\"" + plotdetail::px(g.y_to_px(1.0)) +
           "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"5 4\"/>\n";

    std::string pts;
    for (const auto& p : roc.points) {
        if (!pts.empty()) pts += ' ';
        pts += plotdetail::px(g.x_to_px(p.false_positive_rate)) + ',' +
               plotdetail::px(g.y_to_px(p.true_positive_rate));
    }
    svg += "<polyline id=\"roc-curve\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
           "points=\"" + pts + "\"/>\n";

    std::string annotation = "AUC = " + format_fixed(roc.auc, 2);
    if (roc.auc_ci) {
        annotation += " (" + format_whole(roc.auc_ci->confidence_level() * 100.0) + "% CI: " +
                      format_fixed(roc.auc_ci->lower().value(), 2) + ", " +
                      format_fixed(roc.auc_ci->upper().value(), 2) + ")";
    }
    svg += "<text id=\"auc-annotation\" x=\"" + plotdetail::px(g.px_left + g.px_width - 10.0) +
           "\" y=\"" + plotdetail::px(g.px_top + g.px_height - 10.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#222222\">" + annotation + "</text>\n";

    svg += "</svg>\n";
    return svg;
}

}  // namespace prevplot
