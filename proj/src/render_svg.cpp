#include "geolog/render_svg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace geolog {
namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                          "#b07aa1", "#76b7b2", "#edc948", "#ff9da7",
                          "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

double to_double(const Rat& r) { return r.get_d(); }

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(2);
    ss << std::fixed << x;
    return ss.str();
}

struct Frame {
    double px(const Rat& x) const { return 40.0 + 520.0 * to_double(x); }
    double py(const Rat& y) const { return 560.0 - 520.0 * to_double(y); }
};

// order polygon vertices around their centroid; exact comparisons are not
// needed for drawing
QMat polygon_order(QMat pts, std::size_t ax, std::size_t ay) {
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += to_double(p[ax]);
        cy += to_double(p[ay]);
    }
    cx /= double(pts.size());
    cy /= double(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const QVec& a, const QVec& b) {
        return std::atan2(to_double(a[ay]) - cy, to_double(a[ax]) - cx) <
               std::atan2(to_double(b[ay]) - cy, to_double(b[ax]) - cx);
    });
    return pts;
}

}  // namespace

std::string render_geography_svg(const Geography& g,
                                 const std::vector<std::pair<std::size_t, Rat>>& fixed) {
    std::set<std::size_t> pinned;
    for (const auto& [i, v] : fixed) {
        if (i >= g.m) throw std::invalid_argument("fixed coordinate out of range");
        if (v < 0 || v > 1) throw std::invalid_argument("fixed value outside the cube");
        if (!pinned.insert(i).second)
            throw std::invalid_argument("coordinate fixed twice");
    }
    std::vector<std::size_t> free_axes;
    for (std::size_t i = 0; i < g.m; ++i)
        if (!pinned.count(i)) free_axes.push_back(i);
    if (free_axes.empty() || free_axes.size() > 2)
        throw std::domain_error("rendering needs one or two free coordinates");

    auto slice = [&](const Polyhedron& p) {
        Polyhedron cut = p;
        for (const auto& [i, v] : fixed) {
            QVec n = qvec_zero(g.m);
            n[i] = 1;
            cut = cut.intersect(Halfspace{n, v, false}, true);
        }
        return cut;
    };

    Frame fr;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    svg << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";

    std::size_t ax = free_axes[0];
    if (free_axes.size() == 2) {
        std::size_t ay = free_axes[1];
        // countries first, then walls on top
        for (std::size_t i = 0; i < g.complex.cells.size(); ++i) {
            const Cell& c = g.complex.cells[i];
            Polyhedron cut = slice(c.closure);
            if (cut.empty() || cut.dim() != 2) continue;
            QMat pts = polygon_order(cut.vertices(), ax, ay);
            const CellPayload& p = g.payloads[i];
            std::string fill =
                p.in_ns ? kPalette[std::size_t(c.payload) % kPaletteSize] : "#e8e8e8";
            svg << "<polygon points=\"";
            for (const auto& v : pts) svg << fmt(fr.px(v[ax])) << "," << fmt(fr.py(v[ay])) << " ";
            svg << "\" fill=\"" << fill << "\" fill-opacity=\"0.75\" stroke=\"none\"/>\n";
        }
        for (std::size_t i = 0; i < g.complex.cells.size(); ++i) {
            const Cell& c = g.complex.cells[i];
            Polyhedron cut = slice(c.closure);
            if (cut.empty() || cut.dim() != 1 || c.dim == g.m) continue;
            const QMat& vs = cut.vertices();
            if (vs.size() != 2) continue;
            svg << "<line x1=\"" << fmt(fr.px(vs[0][ax])) << "\" y1=\""
                << fmt(fr.py(vs[0][ay])) << "\" x2=\"" << fmt(fr.px(vs[1][ax]))
                << "\" y2=\"" << fmt(fr.py(vs[1][ay]))
                << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
        }
        svg << "<rect x=\"40\" y=\"40\" width=\"520\" height=\"520\" fill=\"none\" "
               "stroke=\"black\" stroke-width=\"2\"/>\n";
    } else {
        // an interval with its interior walls as ticks
        double y = 300;
        svg << "<line x1=\"40\" y1=\"" << y << "\" x2=\"560\" y2=\"" << y
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        for (std::size_t i = 0; i < g.complex.cells.size(); ++i) {
            const Cell& c = g.complex.cells[i];
            Polyhedron cut = slice(c.closure);
            if (cut.empty()) continue;
            if (cut.dim() == 1) {
                const QMat& vs = cut.vertices();
                if (vs.size() != 2) continue;
                double x1 = fr.px(vs[0][ax]), x2 = fr.px(vs[1][ax]);
                svg << "<line x1=\"" << fmt(std::min(x1, x2)) << "\" y1=\"" << y
                    << "\" x2=\"" << fmt(std::max(x1, x2)) << "\" y2=\"" << y
                    << "\" stroke=\""
                    << kPalette[std::size_t(c.payload) % kPaletteSize]
                    << "\" stroke-width=\"8\"/>\n";
            } else if (cut.dim() == 0) {
                double x = fr.px(cut.vertices()[0][ax]);
                svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << y - 14 << "\" x2=\""
                    << fmt(x) << "\" y2=\"" << y + 14
                    << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
                svg << "<text x=\"" << fmt(x) << "\" y=\"" << y - 20
                    << "\" font-size=\"14\" text-anchor=\"middle\">"
                    << rat_to_string(cut.vertices()[0][ax]) << "</text>\n";
            }
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace geolog
