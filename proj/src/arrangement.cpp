#include "geolog/arrangement.hpp"

#include <algorithm>
#include <stdexcept>

namespace geolog {

namespace {

// sign of the wall on a cell closure: +1 / -1 when the (open) cell lies
// strictly on one side, 0 when the cell is inside the wall, 2 when the
// wall genuinely cuts the cell
int classify_wall(const Polyhedron& closure, const AffineWall& w) {
    bool has_pos = false, has_neg = false, all_zero = true;
    for (const auto& v : closure.vertices()) {
        int s = sgn(w.eval(v));
        if (s > 0) has_pos = true;
        if (s < 0) has_neg = true;
        if (s != 0) all_zero = false;
    }
    auto scan_dir = [&](const QMat& dirs, bool both) {
        for (const auto& r : dirs) {
            int s = sgn(dot(w.normal, r));
            if (s > 0 || (both && s < 0)) has_pos = true;
            if (s < 0 || (both && s > 0)) has_neg = true;
            if (s != 0) all_zero = false;
        }
    };
    scan_dir(closure.recession_rays(), false);
    scan_dir(closure.lineality(), true);
    if (all_zero) return 0;
    if (has_pos && has_neg) return 2;
    return has_pos ? 1 : -1;
}

}  // namespace

bool ChamberComplex::is_face(std::size_t a, std::size_t b) const {
    if (a == b) return true;
    const Cell& ca = cells[a];
    const Cell& cb = cells[b];
    for (std::size_t i = 0; i < ca.region_signs.size(); ++i)
        if (ca.region_signs[i] != 0 && ca.region_signs[i] != cb.region_signs[i])
            return false;
    for (std::size_t i = 0; i < ca.wall_signs.size(); ++i)
        if (ca.wall_signs[i] != 0 && ca.wall_signs[i] != cb.wall_signs[i])
            return false;
    return ca.dim <= cb.dim;
}

std::size_t ChamberComplex::locate(const QVec& x) const {
    if (!region.contains(x))
        throw std::domain_error("locate: point outside the region");
    std::vector<int> rs, ws;
    for (const auto& h : region.halfspaces())
        rs.push_back(h.eval(x) == 0 ? 0 : 1);
    for (const auto& w : walls) ws.push_back(sgn(w.eval(x)));
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].region_signs == rs && cells[i].wall_signs == ws) return i;
    throw std::logic_error("locate: no cell matches (incomplete complex)");
}

ChamberComplex arrangement_chambers(const Polyhedron& region,
                                    const std::vector<AffineWall>& walls) {
    ChamberComplex cc;
    cc.region = region;
    cc.walls = walls;
    if (region.empty()) return cc;

    // base decomposition: the relatively open faces of the region
    std::vector<Cell> cells;
    for (auto& f : region.all_faces()) {
        if (f.empty()) continue;
        Cell c;
        QVec p = f.rel_interior_point();
        for (const auto& h : region.halfspaces())
            c.region_signs.push_back(h.eval(p) == 0 ? 0 : 1);
        c.dim = f.dim();
        c.closure = std::move(f);
        cells.push_back(std::move(c));
    }

    // split by each wall in turn
    for (const auto& w : walls) {
        std::vector<Cell> next;
        for (auto& c : cells) {
            int cls = classify_wall(c.closure, w);
            if (cls != 2) {
                c.wall_signs.push_back(cls);
                next.push_back(std::move(c));
                continue;
            }
            Halfspace ge{w.normal, w.offset, false};
            Halfspace le{scale(Rat(-1), w.normal), -w.offset, false};
            Cell plus = c, zero = c, minus = c;
            plus.closure = c.closure.intersect(ge);
            plus.wall_signs.push_back(1);
            zero.closure = c.closure.intersect(ge, /*as_equation=*/true);
            zero.wall_signs.push_back(0);
            zero.dim = zero.closure.dim();
            minus.closure = c.closure.intersect(le);
            minus.wall_signs.push_back(-1);
            next.push_back(std::move(plus));
            next.push_back(std::move(zero));
            next.push_back(std::move(minus));
        }
        cells = std::move(next);
    }

    cc.cells = std::move(cells);

    const std::size_t n = cc.cells.size();
    cc.face_of.assign(n, {});
    cc.adjacent.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && cc.is_face(i, j) && cc.cells[i].dim < cc.cells[j].dim)
                cc.face_of[i].push_back(j);
    // neighbors: same-dimensional cells sharing a codim-1 face
    for (std::size_t f = 0; f < n; ++f) {
        const auto& owners = cc.face_of[f];
        for (std::size_t a : owners)
            for (std::size_t b : owners)
                if (a != b && cc.cells[a].dim == cc.cells[b].dim &&
                    cc.cells[f].dim + 1 == cc.cells[a].dim)
                    cc.adjacent[a].push_back(b);
    }
    for (auto& v : cc.adjacent) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return cc;
}

}  // namespace geolog
