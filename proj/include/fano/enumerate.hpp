#pragma once

#include "fano/lattice.hpp"

#include <map>
#include <vector>

namespace fano {

namespace detail {

/// Frame pinned at a vertex: vertex to origin, outgoing edge direction to
/// (1,0), the other outgoing direction to (-q, p). Same construction as
/// standardize_edge but usable on non-primitive edges via their directions.
inline LatticePolygon vertex_frame_image(const LatticePolygon& P, std::size_t i) {
    std::size_t n = P.size();
    LatticePoint v = P.vertex(i);
    LatticeVector e = primitive_part(P.vertex(i + 1) - v);
    LatticeVector back = primitive_part(P.vertex(i + n - 1) - v);
    NormalizedPair pq = normalize_pair(e, back);
    auto [g, alpha, beta] = extended_gcd(e.dx, e.dy);
    UnimodularAffineMap B{alpha, beta, -e.dy, e.dx, {0, 0}};
    LatticeVector bi = B(back);
    Int k = (-pq.q - bi.dx) / pq.p;
    UnimodularAffineMap U{1, k, 0, 1, {0, 0}};
    UnimodularAffineMap A = U.compose(B);
    LatticePoint v0 = A(v);
    A.t = {-v0.x, -v0.y};
    return apply_map(P, A);
}

}  // namespace detail

/// Canonical representative of the unimodular affine equivalence class of P:
/// lexicographically smallest vertex list over all vertex-pinned frames of P
/// and of its mirror image.
inline LatticePolygon canonical_form(const LatticePolygon& P) {
    std::optional<LatticePolygon> best;
    auto scan = [&](const LatticePolygon& Q) {
        for (std::size_t i = 0; i < Q.size(); ++i) {
            LatticePolygon img = detail::vertex_frame_image(Q, i);
            if (!best || img.vertices() < best->vertices()) best = img;
        }
    };
    scan(P);
    scan(apply_map(P, UnimodularAffineMap{-1, 0, 0, 1, {0, 0}}));
    return *best;
}

/// All smooth lattice polygons with extent at most `extent` in both axes
/// (i.e. fitting a translate of the (extent+1) x (extent+1) vertex box),
/// deduplicated up to unimodular affine equivalence.
///
/// A smooth polygon is a cyclic sequence of edges l_i * d_i with primitive
/// directions d_i in strict angular order and det(d_i, d_{i+1}) = 1 at every
/// corner; the search walks these sequences directly.
inline std::vector<LatticePolygon> smooth_polygons_up_to_equivalence(int extent) {
    std::vector<LatticeVector> dirs;
    for (int x = -extent; x <= extent; ++x)
        for (int y = -extent; y <= extent; ++y)
            if ((x || y) && gcd_int(x, y) == 1) dirs.push_back({x, y});
    std::sort(dirs.begin(), dirs.end(), detail::angle_less);

    // successors[i]: directions after dirs[i] in angular order with det = 1
    std::vector<std::vector<std::size_t>> successors(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j)
            if (cross(dirs[i], dirs[j]) == 1) successors[i].push_back(j);

    std::map<std::vector<LatticePoint>, LatticePolygon> found;
    std::vector<LatticePoint> chain;  // vertices, starting at the origin

    auto extent_ok = [&](const LatticePoint& p) {
        Int lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
        for (const auto& q : chain) {
            lo_x = std::min(lo_x, q.x);
            hi_x = std::max(hi_x, q.x);
            lo_y = std::min(lo_y, q.y);
            hi_y = std::max(hi_y, q.y);
        }
        return std::max(hi_x, p.x) - std::min(lo_x, p.x) <= extent &&
               std::max(hi_y, p.y) - std::min(lo_y, p.y) <= extent;
    };

    auto close_up = [&](std::size_t first, std::size_t cur) {
        if (chain.size() < 3) return;
        // implicit closing edge back to the origin: must continue the strict
        // angular order and turn unimodularly at both remaining corners
        LatticeVector gap = LatticePoint{0, 0} - chain.back();
        if (gap.dx == 0 && gap.dy == 0) return;
        LatticeVector dc = primitive_part(gap);
        if (!detail::angle_less(dirs[cur], dc)) return;
        if (cross(dirs[cur], dc) != 1) return;
        if (cross(dc, dirs[first]) != 1) return;
        auto key = canonical_form(LatticePolygon(chain)).vertices();
        if (!found.count(key)) found.emplace(key, LatticePolygon(key));
    };

    // depth-first over (direction, length) sequences
    auto dfs = [&](auto&& self, std::size_t first, std::size_t cur) -> void {
        close_up(first, cur);
        for (std::size_t nxt : successors[cur]) {
            for (int len = 1; len <= extent; ++len) {
                LatticePoint p = chain.back() + Int(len) * dirs[nxt];
                if (!extent_ok(p)) break;
                chain.push_back(p);
                self(self, first, nxt);
                chain.pop_back();
            }
        }
    };

    for (std::size_t first = 0; first < dirs.size(); ++first) {
        for (int len = 1; len <= extent; ++len) {
            LatticePoint p = LatticePoint{0, 0} + Int(len) * dirs[first];
            chain = {LatticePoint{0, 0}, p};
            if (!extent_ok(p)) break;
            dfs(dfs, first, first);
        }
    }
    chain.clear();

    std::vector<LatticePolygon> out;
    out.reserve(found.size());
    for (auto& [key, poly] : found) out.push_back(std::move(poly));
    return out;
}

}  // namespace fano
