#pragma once

#include "fano/lattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fano {

/// conv{(0,0), (1,0), (0,alpha), (1,beta)}.
inline LatticePolygon scroll_normal_form(const Int& alpha, const Int& beta) {
    std::vector<LatticePoint> vs{{0, 0}, {1, 0}};
    if (beta > 0) vs.push_back({1, beta});
    vs.push_back({0, alpha});
    return LatticePolygon(std::move(vs));
}

/// Witness that P is a rational normal scroll polygon: a unimodular affine map
/// taking P exactly onto the normal form with alpha >= beta >= 0, alpha >= 1.
struct ScrollForm {
    Int alpha;
    Int beta;
    UnimodularAffineMap map;
};

/// Scroll detection: P has lattice width one iff it is lattice equivalent to
/// some P_{alpha,beta}. A width-one direction is always realized by an edge
/// normal, so scanning edge normals is exhaustive.
inline std::optional<ScrollForm> detect_scroll(const LatticePolygon& P) {
    std::optional<ScrollForm> best;
    auto pts = lattice_points(P);

    auto consider = [&](const LatticeVector& f) {
        Int lo = dot(f, P.vertex(0) - LatticePoint{0, 0}), hi = lo;
        for (const auto& v : P.vertices()) {
            Int val = dot(f, v - LatticePoint{0, 0});
            lo = std::min(lo, val);
            hi = std::max(hi, val);
        }
        if (hi - lo != 1) return;
        auto [g, al, be] = extended_gcd(f.dx, f.dy);
        LatticeVector w{-be, al};  // det(f, w) = 1
        for (int sign = 0; sign < 2; ++sign) {
            LatticeVector row2 = sign == 0 ? w : -w;
            UnimodularAffineMap m{f.dx, f.dy, row2.dx, row2.dy, {0, 0}};
            m.t = {-lo, 0};
            // drop column 0 to baseline, then shear column 1 down as well
            std::optional<Int> y0, y1;
            for (const auto& p : pts) {
                LatticePoint ip = m(p);
                auto& slot = ip.x == 0 ? y0 : y1;
                if (!slot || ip.y < *slot) slot = ip.y;
            }
            if (!y0 || !y1)
                throw Error(ErrorCode::InternalInconsistency, "width-one column is empty");
            UnimodularAffineMap drop{1, 0, 0, 1, {0, -*y0}};
            m = drop.compose(m);
            Int shear_m = *y1 - *y0;
            UnimodularAffineMap shear{1, 0, -shear_m, 1, {0, 0}};
            m = shear.compose(m);

            Int alpha = 0, beta = 0;
            for (const auto& p : pts) {
                LatticePoint ip = m(p);
                (ip.x == 0 ? alpha : beta) = std::max(ip.x == 0 ? alpha : beta, ip.y);
            }
            if (alpha < beta) continue;  // mirrored candidate covers this
            if (alpha < 1)
                throw Error(ErrorCode::InternalInconsistency, "scroll with alpha = 0");
            if (!(apply_map(P, m) == scroll_normal_form(alpha, beta)))
                throw Error(ErrorCode::InternalInconsistency,
                            "width-one polygon is not a scroll normal form");
            if (best && (best->alpha != alpha || best->beta != beta))
                throw Error(ErrorCode::InternalInconsistency, "ambiguous scroll form");
            auto key = [](const UnimodularAffineMap& x) {
                return std::array<Int, 6>{x.a, x.b, x.c, x.d, x.t.dx, x.t.dy};
            };
            if (!best || key(m) < key(best->map)) best = ScrollForm{alpha, beta, m};
        }
    };

    std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector e = P.vertex(i + 1) - P.vertex(i);
        LatticeVector u = primitive_part({-e.dy, e.dx});
        consider(u);
        consider(-u);
    }
    return best;
}

/// Symbolic description of an irreducible piece of the Fano scheme of lines.
struct ComponentDescriptor {
    enum class Kind {
        ReducedPoint,     // xi_1
        FatPoint,         // xi_l, l >= 2
        FatPointProduct,  // xi_a x xi_b, 2 <= a <= b
        P1,
        P2,
        P1CrossXi2,
        Disjoint,
    };

    Kind kind;
    Int l{0};     // FatPoint
    Int a{0}, b{0};  // FatPointProduct, stored with a <= b
    std::vector<ComponentDescriptor> parts;  // Disjoint

    static ComponentDescriptor reduced_point() { return {Kind::ReducedPoint}; }
    static ComponentDescriptor fat_point(Int l) {
        if (l < 2) throw Error(ErrorCode::InternalInconsistency, "fat point needs l >= 2");
        ComponentDescriptor d{Kind::FatPoint};
        d.l = std::move(l);
        return d;
    }
    static ComponentDescriptor fat_point_product(Int a, Int b) {
        if (a > b) std::swap(a, b);
        if (a < 2)
            throw Error(ErrorCode::InternalInconsistency, "fat point product needs factors >= 2");
        ComponentDescriptor d{Kind::FatPointProduct};
        d.a = std::move(a);
        d.b = std::move(b);
        return d;
    }
    static ComponentDescriptor p1() { return {Kind::P1}; }
    static ComponentDescriptor p2() { return {Kind::P2}; }
    static ComponentDescriptor p1_cross_xi2() { return {Kind::P1CrossXi2}; }
    static ComponentDescriptor disjoint(std::vector<ComponentDescriptor> parts) {
        ComponentDescriptor d{Kind::Disjoint};
        d.parts = std::move(parts);
        return d;
    }

    bool zero_dimensional() const {
        switch (kind) {
            case Kind::ReducedPoint:
            case Kind::FatPoint:
            case Kind::FatPointProduct:
                return true;
            case Kind::Disjoint: {
                for (const auto& p : parts)
                    if (!p.zero_dimensional()) return false;
                return true;
            }
            default:
                return false;
        }
    }

    /// Degree = Artinian length; zero-dimensional kinds only.
    Int degree() const {
        switch (kind) {
            case Kind::ReducedPoint: return 1;
            case Kind::FatPoint: return l;
            case Kind::FatPointProduct: return a * b;
            default:
                throw Error(ErrorCode::NotZeroDimensional, "degree of " + str());
        }
    }

    std::string str() const {
        switch (kind) {
            case Kind::ReducedPoint: return "xi_1";
            case Kind::FatPoint: return "xi_" + l.str();
            case Kind::FatPointProduct: return "xi_" + a.str() + " x xi_" + b.str();
            case Kind::P1: return "P1";
            case Kind::P2: return "P2";
            case Kind::P1CrossXi2: return "P1 x xi_2";
            case Kind::Disjoint: {
                std::string s;
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    if (i) s += " + ";
                    s += parts[i].str();
                }
                return s;
            }
        }
        return "?";
    }

    friend bool operator==(const ComponentDescriptor& x, const ComponentDescriptor& y) {
        return x.kind == y.kind && x.l == y.l && x.a == y.a && x.b == y.b && x.parts == y.parts;
    }
};

/// The five scroll answers, keyed on (alpha, beta).
inline ComponentDescriptor classify_scroll(const ScrollForm& f) {
    if (f.alpha < 1 || f.beta < 0 || f.beta > f.alpha)
        throw Error(ErrorCode::InvalidScroll,
                    "(" + f.alpha.str() + "," + f.beta.str() + ")");
    if (f.alpha == 1 && f.beta == 0) return ComponentDescriptor::p2();
    if (f.alpha == 1 && f.beta == 1)
        return ComponentDescriptor::disjoint(
            {ComponentDescriptor::p1(), ComponentDescriptor::p1()});
    if (f.beta == 0) return ComponentDescriptor::p1_cross_xi2();
    if (f.beta == 1)
        return ComponentDescriptor::disjoint(
            {ComponentDescriptor::p1(), ComponentDescriptor::reduced_point()});
    return ComponentDescriptor::p1();
}

/// Per-edge component on a non-scroll polygon. The printed case split is
/// mu >= 3 / mu = 2 / mu = 1; finiteness of the gammas used here is
/// guaranteed for non-scroll polygons.
inline ComponentDescriptor classify_edge(const EdgeInvariants& inv) {
    if (inv.mu >= 3) return ComponentDescriptor::reduced_point();
    if (inv.mu == 2) {
        Gamma m = min_gamma(inv.gamma_b, inv.gamma_c);
        if (m.is_infinite())
            throw Error(ErrorCode::InfiniteGamma,
                        "mu = 2 with both gammas infinite; scroll edge passed to classify_edge");
        return ComponentDescriptor::fat_point(m.value());  // value >= 2 enforced by Gamma
    }
    if (inv.gamma_b.is_infinite() || inv.gamma_c.is_infinite())
        throw Error(ErrorCode::InfiniteGamma,
                    "mu = 1 with an infinite gamma; scroll edge passed to classify_edge");
    return ComponentDescriptor::fat_point_product(inv.gamma_b.value(), inv.gamma_c.value());
}

struct EdgeClassification {
    PrimitiveEdge edge;
    EdgeInvariants invariants;
    ComponentDescriptor component;
    Int degree;
};

struct FanoDescription {
    std::optional<ScrollForm> scroll;
    std::optional<ComponentDescriptor> global;   // scroll cases only
    std::vector<EdgeClassification> components;  // non-scroll cases, edge order
    std::optional<Int> total_degree;             // nullopt: not applicable
    std::optional<bool> reduced;                 // nullopt: not applicable
    std::optional<Int> line_count;               // nullopt: infinite
    std::string bound_note;
};

inline std::string line_count_bound_report(const FanoDescription& desc);

/// Full description of the Fano scheme of lines of X_P.
inline FanoDescription classify(const LatticePolygon& P) {
    FanoDescription out;
    if (auto sf = detect_scroll(P)) {
        out.scroll = *sf;
        out.global = classify_scroll(*sf);
        out.bound_note =
            "Fano scheme is positive-dimensional; the degeneration bound applies only to "
            "zero-dimensional Fano schemes";
        return out;
    }
    Int total = 0;
    bool all_reduced = true;
    for (const auto& E : primitive_edges(P)) {
        EdgeInvariants inv = edge_invariants(P, E);
        ComponentDescriptor comp = classify_edge(inv);
        Int deg = comp.degree();
        total += deg;
        if (comp.kind != ComponentDescriptor::Kind::ReducedPoint) all_reduced = false;
        out.components.push_back(EdgeClassification{E, std::move(inv), std::move(comp), std::move(deg)});
    }
    out.total_degree = total;
    out.line_count = Int(out.components.size());
    out.reduced = all_reduced;
    out.bound_note = line_count_bound_report(out);
    return out;
}

/// Torus fixed points of the Fano scheme of k-planes: faces of P which are
/// primitive k-simplices.
struct FixedPlanes {
    Int count;
    std::vector<std::vector<LatticePoint>> faces;
};

inline FixedPlanes fixed_planes(const LatticePolygon& P, int k) {
    FixedPlanes out{0, {}};
    if (k == 0) {
        for (const auto& v : P.vertices()) out.faces.push_back({v});
    } else if (k == 1) {
        for (const auto& E : primitive_edges(P)) out.faces.push_back({E.b, E.c});
    } else if (k == 2) {
        // P itself, when it is a primitive 2-simplex (unimodular triangle)
        if (P.size() == 3 && P.area2() == 1) out.faces.push_back(P.vertices());
    } else {
        throw Error(ErrorCode::UnsupportedK, "k = " + std::to_string(k));
    }
    out.count = Int(out.faces.size());
    return out;
}

/// Degeneration bound: any surface degenerating flatly to X_P (with Fano
/// scheme dimensions agreeing) has at most deg F_1(X_P) lines.
inline std::string line_count_bound_report(const FanoDescription& desc) {
    if (!desc.total_degree || !desc.line_count)
        throw Error(ErrorCode::NotZeroDimensional,
                    "degeneration bound needs a zero-dimensional Fano scheme");
    return "any surface admitting a flat degeneration to this toric surface, with "
           "zero-dimensional Fano scheme of lines, contains at most " +
           desc.total_degree->str() + " lines; the toric surface itself contains exactly " +
           desc.line_count->str() + " lines";
}

}  // namespace fano
