#pragma once

#include "fano/error.hpp"
#include "fano/numeric.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fano {

struct LatticeVector {
    Int dx, dy;

    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        return {a.dx + b.dx, a.dy + b.dy};
    }
    friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
        return {a.dx - b.dx, a.dy - b.dy};
    }
    LatticeVector operator-() const { return {-dx, -dy}; }
    friend LatticeVector operator*(const Int& k, const LatticeVector& v) {
        return {k * v.dx, k * v.dy};
    }
    friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
        return a.dx == b.dx && a.dy == b.dy;
    }
    friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
    friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
        if (a.dx != b.dx) return a.dx < b.dx;
        return a.dy < b.dy;
    }
};

struct LatticePoint {
    Int x, y;

    friend LatticeVector operator-(const LatticePoint& a, const LatticePoint& b) {
        return {a.x - b.x, a.y - b.y};
    }
    friend LatticePoint operator+(const LatticePoint& a, const LatticeVector& v) {
        return {a.x + v.dx, a.y + v.dy};
    }
    friend LatticePoint operator-(const LatticePoint& a, const LatticeVector& v) {
        return {a.x - v.dx, a.y - v.dy};
    }
    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const LatticePoint& a, const LatticePoint& b) { return !(a == b); }
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

inline Int cross(const LatticeVector& a, const LatticeVector& b) {
    return a.dx * b.dy - a.dy * b.dx;
}

inline Int dot(const LatticeVector& a, const LatticeVector& b) {
    return a.dx * b.dx + a.dy * b.dy;
}

inline bool is_primitive(const LatticeVector& v) {
    return gcd_int(v.dx, v.dy) == 1;
}

/// v / gcd(v); errors on the zero vector.
inline LatticeVector primitive_part(const LatticeVector& v) {
    Int g = gcd_int(v.dx, v.dy);
    if (g == 0) throw Error(ErrorCode::DegenerateInput, "primitive_part of zero vector");
    return {v.dx / g, v.dy / g};
}

inline std::string to_string(const LatticePoint& p) {
    return "(" + p.x.str() + "," + p.y.str() + ")";
}

inline std::string to_string(const LatticeVector& v) {
    return "(" + v.dx.str() + "," + v.dy.str() + ")";
}

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
    return os << to_string(p);
}

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
    return os << to_string(v);
}

/// Affine map x -> A*x + t with A in GL2(Z).
struct UnimodularAffineMap {
    Int a, b, c, d;     // matrix rows (a b; c d)
    LatticeVector t{0, 0};

    static UnimodularAffineMap identity() { return {1, 0, 0, 1, {0, 0}}; }

    Int det() const { return a * d - b * c; }

    void validate() const {
        Int dt = det();
        if (dt != 1 && dt != -1)
            throw Error(ErrorCode::DegenerateInput, "matrix determinant must be +1 or -1");
    }

    LatticePoint operator()(const LatticePoint& p) const {
        return {a * p.x + b * p.y + t.dx, c * p.x + d * p.y + t.dy};
    }
    LatticeVector operator()(const LatticeVector& v) const {
        return {a * v.dx + b * v.dy, c * v.dx + d * v.dy};
    }

    /// this after other: (this*other)(x) = this(other(x)).
    UnimodularAffineMap compose(const UnimodularAffineMap& o) const {
        UnimodularAffineMap m;
        m.a = a * o.a + b * o.c;
        m.b = a * o.b + b * o.d;
        m.c = c * o.a + d * o.c;
        m.d = c * o.b + d * o.d;
        LatticeVector ot{o.t.dx, o.t.dy};
        m.t = {a * ot.dx + b * ot.dy + t.dx, c * ot.dx + d * ot.dy + t.dy};
        return m;
    }

    UnimodularAffineMap inverse() const {
        Int dt = det();
        UnimodularAffineMap m;
        // adjugate over det, exact since det = +-1
        m.a = d / dt;
        m.b = -b / dt;
        m.c = -c / dt;
        m.d = a / dt;
        m.t = {-(m.a * t.dx + m.b * t.dy), -(m.c * t.dx + m.d * t.dy)};
        return m;
    }

    friend bool operator==(const UnimodularAffineMap& x, const UnimodularAffineMap& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.t == y.t;
    }
};

namespace detail {

// Angular half: true for vectors with angle in [0, pi) measured from +x.
inline bool upper_half(const LatticeVector& v) {
    return v.dy > 0 || (v.dy == 0 && v.dx > 0);
}

// Strict counterclockwise angular order on nonzero vectors.
inline bool angle_less(const LatticeVector& a, const LatticeVector& b) {
    bool ua = upper_half(a), ub = upper_half(b);
    if (ua != ub) return ua;
    return cross(a, b) > 0;
}

}  // namespace detail

/// Convex lattice polygon: counterclockwise, every vertex extreme, dimension 2.
/// Vertex list is rotated so the lexicographically smallest vertex comes first;
/// all derived orderings (edges, boundary walks) are deterministic.
class LatticePolygon {
public:
    explicit LatticePolygon(std::vector<LatticePoint> vertices) : verts_(std::move(vertices)) {
        validate();
        canonical_rotation();
    }

    /// Convex hull of a point set; non-extreme points are discarded.
    static LatticePolygon hull(std::vector<LatticePoint> pts);

    const std::vector<LatticePoint>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const LatticePoint& vertex(std::size_t i) const { return verts_[i % verts_.size()]; }

    /// Twice the area (shoelace sum); always positive.
    Int area2() const {
        Int s = 0;
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const auto& p = verts_[i];
            const auto& q = verts_[(i + 1) % verts_.size()];
            s += p.x * q.y - q.x * p.y;
        }
        return s;
    }

    bool contains(const LatticePoint& p) const {
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            LatticeVector e = verts_[(i + 1) % verts_.size()] - verts_[i];
            if (cross(e, p - verts_[i]) < 0) return false;
        }
        return true;
    }

    friend bool operator==(const LatticePolygon& p, const LatticePolygon& q) {
        return p.verts_ == q.verts_;
    }

private:
    void validate() const {
        if (verts_.size() < 3)
            throw Error(ErrorCode::DegenerateInput, "polygon needs at least 3 vertices");
        std::size_t n = verts_.size();
        std::size_t wraps = 0;
        for (std::size_t i = 0; i < n; ++i) {
            LatticeVector e0 = verts_[(i + 1) % n] - verts_[i];
            LatticeVector e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
            if (e0.dx == 0 && e0.dy == 0)
                throw Error(ErrorCode::DegenerateInput, "repeated vertex");
            if (cross(e0, e1) <= 0)
                throw Error(ErrorCode::DegenerateInput,
                            "vertices must be strictly convex counterclockwise");
            if (!detail::angle_less(e0, e1)) ++wraps;
        }
        // exactly one angular wrap = total turning 2*pi (rules out multiply
        // wound vertex cycles, which pass the local convexity test)
        if (wraps != 1)
            throw Error(ErrorCode::DegenerateInput, "vertex cycle winds more than once");
    }

    void canonical_rotation() {
        auto it = std::min_element(verts_.begin(), verts_.end());
        std::rotate(verts_.begin(), it, verts_.end());
    }

    std::vector<LatticePoint> verts_;
};

inline LatticePolygon LatticePolygon::hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw Error(ErrorCode::DegenerateInput, "hull needs at least 3 points");
    // monotone chain; strict turns only, so collinear input points are dropped
    auto build = [](const std::vector<LatticePoint>& ps, std::vector<LatticePoint>& out) {
        for (const auto& p : ps) {
            while (out.size() >= 2 &&
                   cross(out.back() - out[out.size() - 2], p - out.back()) <= 0)
                out.pop_back();
            out.push_back(p);
        }
    };
    std::vector<LatticePoint> lower, upper;
    build(pts, lower);
    std::vector<LatticePoint> rev(pts.rbegin(), pts.rend());
    build(rev, upper);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3)
        throw Error(ErrorCode::DegenerateInput, "hull is not two-dimensional");
    return LatticePolygon(std::move(lower));
}

/// All lattice points of P (interior and boundary), lexicographic order.
inline std::vector<LatticePoint> lattice_points(const LatticePolygon& P) {
    Int minx = P.vertex(0).x, maxx = minx, miny = P.vertex(0).y, maxy = miny;
    for (const auto& v : P.vertices()) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }
    std::vector<LatticePoint> out;
    for (Int x = minx; x <= maxx; ++x)
        for (Int y = miny; y <= maxy; ++y)
            if (P.contains({x, y})) out.push_back({x, y});
    return out;
}

/// Boundary lattice points in counterclockwise cyclic order, starting at the
/// lexicographically smallest vertex. Includes non-vertex edge points.
inline std::vector<LatticePoint> boundary_lattice_points(const LatticePolygon& P) {
    std::vector<LatticePoint> out;
    std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        LatticePoint from = P.vertex(i);
        LatticeVector e = P.vertex(i + 1) - from;
        Int g = gcd_int(e.dx, e.dy);
        LatticeVector step{e.dx / g, e.dy / g};
        for (Int k = 0; k < g; ++k) out.push_back(from + k * step);
    }
    return out;
}

/// Primitive edge E = bc with its adjacent boundary lattice points a, d and
/// the primitive inner normal u (u(b) = u(c) minimal over P).
struct PrimitiveEdge {
    LatticePoint b, c;   // consecutive vertices, c - b primitive
    LatticePoint a, d;   // boundary lattice points adjacent to b (not c) and c (not b)
    LatticeVector u;     // primitive inner normal
    std::size_t index{}; // position in the polygon's ccw edge order
};

/// One entry per edge of P whose endpoint difference is primitive
/// (equivalently: the edge contains exactly two lattice points).
inline std::vector<PrimitiveEdge> primitive_edges(const LatticePolygon& P) {
    std::vector<PrimitiveEdge> out;
    std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        LatticePoint b = P.vertex(i);
        LatticePoint c = P.vertex(i + 1);
        LatticeVector e = c - b;
        if (gcd_int(e.dx, e.dy) != 1) continue;
        // a = nearest boundary lattice point on the previous edge, d = on the next
        LatticeVector prev = b - P.vertex(i + n - 1);
        LatticeVector next = P.vertex(i + 2) - c;
        PrimitiveEdge pe;
        pe.b = b;
        pe.c = c;
        pe.a = b - primitive_part(prev);
        pe.d = c + primitive_part(next);
        pe.u = {-e.dy, e.dx};  // rotate +90: inner side for ccw orientation
        pe.index = i;
        out.push_back(pe);
    }
    return out;
}

struct NormalizedPair {
    Int p;  // positive
    Int q;  // 0 <= q < p, coprime to p when nonzero
};

/// Normal form of an ordered pair of primitive vectors: the unique (p, q),
/// 0 <= q < p, such that some A in GL2(Z) has A(v) = (1,0), A(w) = (-q, p).
inline NormalizedPair normalize_pair(const LatticeVector& v, const LatticeVector& w) {
    if (!is_primitive(v))
        throw Error(ErrorCode::NotPrimitive, "first vector " + to_string(v));
    if (!is_primitive(w))
        throw Error(ErrorCode::NotPrimitive, "second vector " + to_string(w));
    Int p = abs_int(cross(v, w));
    if (p == 0)
        throw Error(ErrorCode::ZeroDeterminant,
                    "vectors " + to_string(v) + ", " + to_string(w) + " are parallel");
    auto [g, alpha, beta] = extended_gcd(v.dx, v.dy);
    // g == 1 since v is primitive
    Int t = alpha * w.dx + beta * w.dy;
    // t is well-defined mod p over the Bezout choices; representative in [0, p)
    Int q = mod_floor(-t, p);
    if (q > 0 && gcd_int(p, q) != 1)
        throw Error(ErrorCode::InternalInconsistency, "normal form p, q not coprime");
    return {p, q};
}

/// Either a finite value >= 2 or infinity (the q = 0 convention).
class Gamma {
public:
    static Gamma infinity() { return Gamma(); }
    static Gamma finite(Int v) {
        if (v < 2)
            throw Error(ErrorCode::InternalInconsistency,
                        "finite gamma must be >= 2, got " + v.str());
        Gamma g;
        g.value_ = std::move(v);
        return g;
    }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    const Int& value() const {
        if (!value_) throw Error(ErrorCode::InfiniteGamma, "gamma is infinite");
        return *value_;
    }

    friend bool operator==(const Gamma& a, const Gamma& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Gamma& a, const Gamma& b) { return !(a == b); }
    /// Finite values compare by magnitude; infinity is largest.
    friend bool operator<(const Gamma& a, const Gamma& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.value_ < *b.value_;
    }

    std::string str() const { return value_ ? value_->str() : std::string("infinity"); }

private:
    Gamma() = default;
    std::optional<Int> value_;
};

inline Gamma min_gamma(const Gamma& a, const Gamma& b) { return a < b ? a : b; }

/// gamma(v, w) = ceil(p/q) for the normal form, infinity when q = 0.
inline Gamma gamma(const LatticeVector& v, const LatticeVector& w) {
    NormalizedPair n = normalize_pair(v, w);
    if (n.q == 0) return Gamma::infinity();
    return Gamma::finite(ceil_div(n.p, n.q));
}

/// mu_E: number of lattice points of P at height one above the edge.
inline Int mu(const LatticePolygon& P, const PrimitiveEdge& E) {
    Int base = dot(E.u, E.b - LatticePoint{0, 0});
    Int count = 0;
    for (const auto& pt : lattice_points(P))
        if (dot(E.u, pt - LatticePoint{0, 0}) == base + 1) ++count;
    if (count < 1)
        throw Error(ErrorCode::InternalInconsistency, "mu must be >= 1");
    return count;
}

namespace detail {

inline LatticeVector canonical_sign(const LatticeVector& v) {
    if (v.dx < 0 || (v.dx == 0 && v.dy < 0)) return -v;
    return v;
}

}  // namespace detail

/// Width of P along each edge's primitive inner normal, minimized. Exact for
/// deciding width = 1; for larger values it is an upper bound for the true
/// lattice width (a width-1 direction is always realized by an edge normal).
struct WidthResult {
    Int width;
    LatticeVector direction;
};

inline WidthResult lattice_width(const LatticePolygon& P) {
    std::optional<WidthResult> best;
    std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector e = P.vertex(i + 1) - P.vertex(i);
        LatticeVector u = primitive_part({-e.dy, e.dx});
        Int lo = dot(u, P.vertex(0) - LatticePoint{0, 0});
        Int hi = lo;
        for (const auto& v : P.vertices()) {
            Int val = dot(u, v - LatticePoint{0, 0});
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
        Int w = hi - lo;
        LatticeVector dir = detail::canonical_sign(u);
        if (!best || w < best->width || (w == best->width && dir < best->direction))
            best = WidthResult{w, dir};
    }
    return *best;
}

/// Image polygon under a unimodular affine map; orientation restored to
/// counterclockwise when det = -1.
inline LatticePolygon apply_map(const LatticePolygon& P, const UnimodularAffineMap& m) {
    m.validate();
    std::vector<LatticePoint> vs;
    vs.reserve(P.size());
    for (const auto& v : P.vertices()) vs.push_back(m(v));
    if (m.det() < 0) std::reverse(vs.begin(), vs.end());
    return LatticePolygon(std::move(vs));
}

struct EdgeInvariants {
    Int mu;
    Gamma gamma_b;
    Gamma gamma_c;
};

/// (gamma_b, gamma_c) = (gamma(c-b, a-b), gamma(b-c, d-c)). For non-scroll P
/// the finiteness guarantees are asserted: mu = 2 forces min finite, mu = 1
/// forces both finite.
inline std::pair<Gamma, Gamma> edge_gammas(const LatticePolygon& P, const PrimitiveEdge& E) {
    Gamma gb = gamma(E.c - E.b, E.a - E.b);
    Gamma gc = gamma(E.b - E.c, E.d - E.c);
    if (lattice_width(P).width != 1) {
        Int m = mu(P, E);
        if (m == 2 && gb.is_infinite() && gc.is_infinite())
            throw Error(ErrorCode::InternalInconsistency,
                        "mu = 2 on a non-scroll polygon requires a finite gamma");
        if (m == 1 && (gb.is_infinite() || gc.is_infinite()))
            throw Error(ErrorCode::InternalInconsistency,
                        "mu = 1 on a non-scroll polygon requires both gammas finite");
    }
    return {gb, gc};
}

inline EdgeInvariants edge_invariants(const LatticePolygon& P, const PrimitiveEdge& E) {
    auto [gb, gc] = edge_gammas(P, E);
    return {mu(P, E), gb, gc};
}

enum class Side { Left, Right };

/// Ray-scan oracle for gamma, independent of the normal-form arithmetic:
/// the smallest height >= 2 at which P has a lattice point strictly beyond
/// the ray from b through the leftmost height-one point (Side::Left), resp.
/// from c through the rightmost height-one point (Side::Right); infinity if
/// no such point exists up to the top of P.
inline Gamma gamma_geometric(const LatticePolygon& P, const PrimitiveEdge& E, Side side) {
    LatticeVector e = E.c - E.b;
    Int base = dot(E.u, E.b - LatticePoint{0, 0});
    auto pts = lattice_points(P);

    std::optional<LatticePoint> anchor;  // extreme height-one point
    Int hmax = 0;
    for (const auto& pt : pts) {
        Int h = dot(E.u, pt - LatticePoint{0, 0}) - base;
        hmax = std::max(hmax, h);
        if (h != 1) continue;
        if (!anchor) {
            anchor = pt;
            continue;
        }
        Int pos = dot(e, pt - *anchor);
        if ((side == Side::Left && pos < 0) || (side == Side::Right && pos > 0)) anchor = pt;
    }
    if (!anchor)
        throw Error(ErrorCode::InternalInconsistency, "no height-one lattice point");

    for (Int h = 2; h <= hmax; ++h) {
        for (const auto& pt : pts) {
            if (dot(E.u, pt - LatticePoint{0, 0}) - base != h) continue;
            bool beyond = side == Side::Left ? cross(*anchor - E.b, pt - E.b) > 0
                                             : cross(*anchor - E.c, pt - E.c) < 0;
            if (beyond) return Gamma::finite(h);
        }
    }
    return Gamma::infinity();
}

/// Standard frame for an edge: a map taking b to (0,0), c to (1,0), P into the
/// upper half-plane, and a to (-q, p) for (p, q) = normalize_pair(c-b, a-b).
struct StandardizedEdge {
    LatticePolygon polygon;
    UnimodularAffineMap map;
    NormalizedPair pq;
};

inline StandardizedEdge standardize_edge(const LatticePolygon& P, const PrimitiveEdge& E) {
    LatticeVector e = E.c - E.b;
    NormalizedPair pq = normalize_pair(e, E.a - E.b);
    auto [g, alpha, beta] = extended_gcd(e.dx, e.dy);
    // rows (alpha beta) and (-e.dy e.dx): determinant 1, sends e to (1,0)
    UnimodularAffineMap B{alpha, beta, -e.dy, e.dx, {0, 0}};
    LatticeVector a_img = B(E.a - E.b);
    if (a_img.dy == -pq.p) {
        // the polygon lies on the clockwise side of b -> c (a reversed edge);
        // flip the vertical axis so it lands in the upper half-plane
        B = UnimodularAffineMap{1, 0, 0, -1, {0, 0}}.compose(B);
        a_img = B(E.a - E.b);
    }
    if (a_img.dy != pq.p)
        throw Error(ErrorCode::InternalInconsistency, "standardization lost the normal form");
    // shear so that a lands on (-q, p); exact by choice of q
    Int k = (-pq.q - a_img.dx) / pq.p;
    if (-pq.q - a_img.dx != k * pq.p)
        throw Error(ErrorCode::InternalInconsistency, "shear is not integral");
    UnimodularAffineMap U{1, k, 0, 1, {0, 0}};
    UnimodularAffineMap A = U.compose(B);
    A.t = {0, 0};
    LatticePoint b0 = A(E.b);
    A.t = {-b0.x, -b0.y};

    StandardizedEdge out{apply_map(P, A), A, pq};
    if (A(E.b) != LatticePoint{0, 0} || A(E.c) != LatticePoint{1, 0} ||
        A(E.a) != LatticePoint{-pq.q, pq.p})
        throw Error(ErrorCode::InternalInconsistency, "standardized frame check failed");
    for (const auto& vtx : out.polygon.vertices())
        if (vtx.y < 0)
            throw Error(ErrorCode::InternalInconsistency,
                        "standardized polygon left the upper half-plane");
    return out;
}

/// Row-count oracle for mu: in the standard frame, mu is one plus the largest
/// x with (x, 1) in the polygon. Independent of the inner-normal height count.
inline Int mu_standard_frame(const LatticePolygon& P, const PrimitiveEdge& E) {
    StandardizedEdge sd = standardize_edge(P, E);
    Int best = -1;
    for (const auto& pt : lattice_points(sd.polygon))
        if (pt.y == 1) best = std::max(best, pt.x);
    if (best < 0)
        throw Error(ErrorCode::InternalInconsistency, "no height-one point in standard frame");
    return best + 1;
}

/// Exhaustive width scan over all primitive directions with entries up to
/// `bound`; a slow oracle for differential testing against lattice_width.
inline WidthResult lattice_width_bruteforce(const LatticePolygon& P, long long bound) {
    std::optional<WidthResult> best;
    for (long long dx = 0; dx <= bound; ++dx)
        for (long long dy = -bound; dy <= bound; ++dy) {
            if (dx == 0 && dy <= 0) continue;
            LatticeVector u{dx, dy};
            if (!is_primitive(u)) continue;
            Int lo = dot(u, P.vertex(0) - LatticePoint{0, 0}), hi = lo;
            for (const auto& v : P.vertices()) {
                Int val = dot(u, v - LatticePoint{0, 0});
                lo = std::min(lo, val);
                hi = std::max(hi, val);
            }
            Int w = hi - lo;
            if (!best || w < best->width || (w == best->width && u < best->direction))
                best = WidthResult{w, u};
        }
    return *best;
}

/// Smoothness of X_P: at every vertex the primitive outgoing edge directions
/// form a lattice basis.
inline bool is_smooth(const LatticePolygon& P) {
    std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector out_next = primitive_part(P.vertex(i + 1) - P.vertex(i));
        LatticeVector out_prev = primitive_part(P.vertex(i + n - 1) - P.vertex(i));
        if (abs_int(cross(out_next, out_prev)) != 1) return false;
    }
    return true;
}

}  // namespace fano
