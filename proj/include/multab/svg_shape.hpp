// Static SVG rendering of the delta shape: the union-of-rectangles region
// whose distinct products the incremental algorithm counts. Cells counted
// arithmetically under a wheel modulus are shaded light, constructed cells
// dark, matching the convention of the shape diagrams. Cell counts are
// embedded in the <desc> element so renders stay text-diffable.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "multab/spf.hpp"
#include "multab/wheel.hpp"

namespace multab {

namespace detail {

inline void svg_rect(std::string& out, double x, double y, double w, double h,
                     const char* fill) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\"/>\n",
                  x, y, w, h, fill);
    out += buf;
}

}  // namespace detail

// Renders the shape of n under wheel modulus w (0 = plain; every cell is
// constructed). Cells are (column j, row i) with i <= j < bound_i, row 1
// at the bottom.
inline std::string render_shape(std::uint64_t n, std::uint32_t w, const SpfTable& spf) {
    if (n < 1) throw std::domain_error("render_shape: n must be positive");
    if (n > 10000) throw std::length_error("render_shape: rendering capped at n <= 10^4");
    if (w != 0 && !is_supported_wheel(w))
        throw std::invalid_argument("render_shape: unsupported wheel");

    DivisorPairList D = divisor_pairs(n, spf);
    WheelConfig cfg;
    bool wheeled = false;
    if (w != 0) {
        cfg = make_wheel_config(n, w, D);
        wheeled = !cfg.fallback;
    }

    const std::uint64_t rows = D.length() >= 2 ? D.last().small : 1;     // show rows < d_last
    const std::uint64_t cols = D.length() >= 2 ? D.pairs[1].large - 1 : 1;  // widest row extent

    const double cell = 16.0;
    const double margin = 24.0;
    const double width = margin * 2 + cols * cell;
    const double height = margin * 2 + rows * cell;

    std::uint64_t dark = 0, light = 0, delta_marks = 0;
    std::string cells_svg;
    const bool label = rows * cols <= 1600;
    std::string labels_svg;

    if (D.length() >= 2) {
        std::size_t k = 0;
        BitVector seen(n);
        for (std::uint64_t i = 1; i < D.last().small; ++i) {
            if (i == D.pairs[k].small) ++k;
            const std::uint64_t bound = D.pairs[k].large;
            for (std::uint64_t j = i; j < bound; ++j) {
                const std::uint64_t v = i * j;
                bool constructed = true;
                if (wheeled) {
                    if (w % i == 0)
                        constructed = false;  // skipped row: counted arithmetically
                    else
                        constructed = v > cfg.thresholds[v % w];
                }
                const double x = margin + (j - 1) * cell;
                const double y = margin + (rows - i) * cell;
                detail::svg_rect(cells_svg, x, y, cell, cell,
                                 constructed ? "#808080" : "#d3d3d3");
                if (constructed)
                    ++dark;
                else
                    ++light;
                if (!seen.set_and_report(v)) ++delta_marks;
                if (label) {
                    char buf[128];
                    std::snprintf(buf, sizeof buf,
                                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"7\" "
                                  "text-anchor=\"middle\">%llu</text>\n",
                                  x + cell / 2, y + cell / 2 + 2.5,
                                  static_cast<unsigned long long>(v));
                    labels_svg += buf;
                }
            }
        }
    }

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %.0f %.0f\" "
                  "width=\"%.0f\" height=\"%.0f\">\n",
                  width, height, width, height);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<desc>n=%llu w=%u delta=%llu constructed_cells=%llu counted_cells=%llu "
                  "rows=%llu cols=%llu</desc>\n",
                  static_cast<unsigned long long>(n), w,
                  static_cast<unsigned long long>(delta_marks),
                  static_cast<unsigned long long>(dark),
                  static_cast<unsigned long long>(light),
                  static_cast<unsigned long long>(rows),
                  static_cast<unsigned long long>(cols));
    out += buf;
    out += cells_svg;

    // Grid over the shown lattice plus emphasized table border.
    out += "<g stroke=\"#404040\" stroke-width=\"0.5\">\n";
    for (std::uint64_t gx = 0; gx <= cols; ++gx) {
        std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n",
                      margin + gx * cell, margin, margin + gx * cell, margin + rows * cell);
        out += buf;
    }
    for (std::uint64_t gy = 0; gy <= rows; ++gy) {
        std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>\n",
                      margin, margin + gy * cell, margin + cols * cell, margin + gy * cell);
        out += buf;
    }
    out += "</g>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"#000\" stroke-width=\"2\"/>\n",
                  margin, margin, cols * cell, rows * cell);
    out += buf;
    out += labels_svg;
    out += "</svg>\n";
    return out;
}

}  // namespace multab
