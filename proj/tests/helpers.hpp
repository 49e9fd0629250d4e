#pragma once

// Shared builders and randomized generators for the test suites.

#include "fano/lattice.hpp"

#include <optional>
#include <random>
#include <vector>

namespace fano::testing {

inline LatticePoint pt(long long x, long long y) { return {Int(x), Int(y)}; }
inline LatticeVector vec(long long x, long long y) { return {Int(x), Int(y)}; }

inline LatticePolygon poly(std::vector<std::pair<long long, long long>> vs) {
    std::vector<LatticePoint> points;
    for (auto& [x, y] : vs) points.push_back(pt(x, y));
    return LatticePolygon(std::move(points));
}

/// conv{(0,0), (1,0), (0,alpha), (1,beta)}; beta = 0 gives the triangle.
inline LatticePolygon scroll_polygon(long long alpha, long long beta) {
    std::vector<LatticePoint> vs{pt(0, 0), pt(1, 0)};
    if (beta > 0) vs.push_back(pt(1, beta));
    vs.push_back(pt(0, alpha));
    return LatticePolygon(std::move(vs));
}

inline LatticePolygon hexagon() {
    return poly({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}});
}
inline LatticePolygon diamond() { return poly({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
inline LatticePolygon dp3_triangle() { return poly({{0, 0}, {2, 1}, {1, 2}}); }
inline LatticePolygon dp5_pentagon() {
    return poly({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {1, -1}});
}
inline LatticePolygon veronese_triangle() { return poly({{0, 0}, {2, 0}, {0, 2}}); }
inline LatticePolygon unit_triangle() { return poly({{0, 0}, {1, 0}, {0, 1}}); }

/// Random element of GL2(Z) x translations, built from shears and swaps.
inline UnimodularAffineMap random_unimodular_map(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> shear(-3, 3);
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<int> trans(-5, 5);
    UnimodularAffineMap m = UnimodularAffineMap::identity();
    for (int step = 0; step < 4; ++step) {
        int k = shear(rng);
        UnimodularAffineMap f = coin(rng) % 2 == 0
                                    ? UnimodularAffineMap{1, Int(k), 0, 1, {0, 0}}
                                    : UnimodularAffineMap{1, 0, Int(k), 1, {0, 0}};
        m = f.compose(m);
    }
    if (coin(rng) == 0) m = UnimodularAffineMap{0, 1, 1, 0, {0, 0}}.compose(m);
    m.t = {Int(trans(rng)), Int(trans(rng))};
    return m;
}

/// Brute-force oracle for the (p, q) normal form: search A in GL2(Z) with
/// entries bounded by N such that A(v) = (1,0) and A(w) = (-q, p), 0 <= q < p.
inline std::optional<NormalizedPair> normal_form_by_search(const LatticeVector& v,
                                                           const LatticeVector& w,
                                                           long long N) {
    for (long long a = -N; a <= N; ++a)
        for (long long b = -N; b <= N; ++b)
            for (long long c = -N; c <= N; ++c)
                for (long long d = -N; d <= N; ++d) {
                    Int det = Int(a) * d - Int(b) * c;
                    if (det != 1 && det != -1) continue;
                    UnimodularAffineMap A{Int(a), Int(b), Int(c), Int(d), {0, 0}};
                    if (A(v) != vec(1, 0)) continue;
                    LatticeVector wi = A(w);
                    if (wi.dy <= 0) continue;
                    Int q = -wi.dx;
                    if (q < 0 || q >= wi.dy) continue;
                    return NormalizedPair{wi.dy, q};
                }
    return std::nullopt;
}

}  // namespace fano::testing
