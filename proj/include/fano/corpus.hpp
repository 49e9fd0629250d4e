#pragma once

#include "fano/lattice.hpp"

#include <string>
#include <vector>

namespace fano {

/// Built-in example polygon. `reconstructed` marks polygons recovered by a
/// bounded invariant-profile search rather than taken from an explicit
/// coordinate list; they are certified by the verification engine.
struct CorpusEntry {
    std::string name;
    LatticePolygon polygon;
    bool reconstructed;
    std::string note;
};

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        auto poly = [](std::vector<LatticePoint> vs) { return LatticePolygon(std::move(vs)); };
        std::vector<CorpusEntry> out;
        out.push_back({"dp6-hexagon",
                       poly({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}),
                       false,
                       "smooth del Pezzo of degree 6, anticanonical embedding; six lines"});
        out.push_back({"dp5-pentagon",
                       poly({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {1, -1}}),
                       true,
                       "singular del Pezzo of degree 5; Fano scheme of degree 10"});
        out.push_back({"dp4-square",
                       poly({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}),
                       false,
                       "singular del Pezzo of degree 4; four fat points of length 4"});
        out.push_back({"dp3-triangle",
                       poly({{0, 0}, {2, 1}, {1, 2}}),
                       false,
                       "singular cubic; three fat points of length 9"});
        out.push_back({"dp2-triangle",
                       poly({{0, 0}, {2, 1}, {0, 4}}),
                       true,
                       "degree-2 del Pezzo embedded by twice the anticanonical class; "
                       "two fat points of length 6"});
        out.push_back({"veronese-triangle",
                       poly({{0, 0}, {2, 0}, {0, 2}}),
                       false,
                       "quadric Veronese surface; contains no lines"});
        out.push_back({"scroll-1-0", poly({{0, 0}, {1, 0}, {0, 1}}), false,
                       "projective plane"});
        out.push_back({"scroll-1-1", poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), false,
                       "smooth quadric surface"});
        out.push_back({"scroll-2-0", poly({{0, 0}, {1, 0}, {0, 2}}), false,
                       "quadric cone"});
        out.push_back({"scroll-3-1", poly({{0, 0}, {1, 0}, {1, 1}, {0, 3}}), false,
                       "rational normal scroll"});
        out.push_back({"scroll-2-2", poly({{0, 0}, {1, 0}, {1, 2}, {0, 2}}), false,
                       "rational normal scroll"});
        return out;
    }();
    return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw Error(ErrorCode::DegenerateInput, "no corpus entry named " + name);
}

}  // namespace fano
