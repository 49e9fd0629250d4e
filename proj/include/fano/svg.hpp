#pragma once

// SVG 1.1 figure: lattice grid, the polygon, its lattice points, primitive
// edges highlighted and labeled with mu and the two gammas. Output is pure
// integer arithmetic and therefore byte-stable across runs.

#include "fano/classify.hpp"

#include <sstream>
#include <string>

namespace fano {

inline std::string render_svg(const LatticePolygon& P) {
    const long long unit = 40, margin = 60, dot = 4;

    Int lx = P.vertex(0).x, hx = lx, ly = P.vertex(0).y, hy = ly;
    for (const auto& v : P.vertices()) {
        lx = std::min(lx, v.x);
        hx = std::max(hx, v.x);
        ly = std::min(ly, v.y);
        hy = std::max(hy, v.y);
    }
    long long x0 = to_ll(lx) - 1, x1 = to_ll(hx) + 1;
    long long y0 = to_ll(ly) - 1, y1 = to_ll(hy) + 1;
    auto X = [&](const Int& x) { return margin + (to_ll(x) - x0) * unit; };
    auto Y = [&](const Int& y) { return margin + (y1 - to_ll(y)) * unit; };  // y up

    std::ostringstream s;
    long long width = 2 * margin + (x1 - x0) * unit;
    long long height = 2 * margin + (y1 - y0) * unit;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";

    // grid
    for (long long gx = x0; gx <= x1; ++gx)
        s << "  <line x1=\"" << X(gx) << "\" y1=\"" << Y(y0) << "\" x2=\"" << X(gx)
          << "\" y2=\"" << Y(y1) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    for (long long gy = y0; gy <= y1; ++gy)
        s << "  <line x1=\"" << X(x0) << "\" y1=\"" << Y(gy) << "\" x2=\"" << X(x1)
          << "\" y2=\"" << Y(gy) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";

    // polygon
    s << "  <polygon points=\"";
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (i) s << " ";
        s << X(P.vertex(i).x) << "," << Y(P.vertex(i).y);
    }
    s << "\" fill=\"#eef4ff\" stroke=\"#444444\" stroke-width=\"2\"/>\n";

    // primitive edges highlighted, with invariant labels
    for (const auto& E : primitive_edges(P)) {
        s << "  <line x1=\"" << X(E.b.x) << "\" y1=\"" << Y(E.b.y) << "\" x2=\"" << X(E.c.x)
          << "\" y2=\"" << Y(E.c.y) << "\" stroke=\"#c01030\" stroke-width=\"4\"/>\n";
        auto [gb, gc] = edge_gammas(P, E);
        Int m = mu(P, E);
        // label anchored at the edge midpoint, nudged along the inner normal
        long long mx = (X(E.b.x) + X(E.c.x)) / 2;
        long long my = (Y(E.b.y) + Y(E.c.y)) / 2;
        long long norm = std::max(std::abs(to_ll(E.u.dx)), std::abs(to_ll(E.u.dy)));
        long long ox = to_ll(E.u.dx) * (unit / 2) / norm;
        long long oy = -to_ll(E.u.dy) * (unit / 2) / norm;
        s << "  <text x=\"" << mx + ox << "\" y=\"" << my + oy
          << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#c01030\">mu=" << m.str()
          << " g(b)=" << gb.str() << " g(c)=" << gc.str() << "</text>\n";
    }

    // lattice points
    for (const auto& p : lattice_points(P))
        s << "  <circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"" << dot
          << "\" fill=\"#222222\"/>\n";

    s << "</svg>\n";
    return s.str();
}

}  // namespace fano
