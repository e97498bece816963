#include "scd/model.hpp"

#include <set>
#include <sstream>

namespace scd {

const char* mode_name(ContainmentMode m) {
    switch (m) {
        case ContainmentMode::Topological: return "topological";
        case ContainmentMode::Immersion: return "immersion";
        case ContainmentMode::RootedImmersion: return "rooted-immersion";
    }
    return "?";
}

ModelCheck verify_model(const PatternDigraph& h, const Digraph& t, const Model& model, ContainmentMode mode,
                        const std::vector<Vertex>& host_roots) {
    auto fail = [](std::string why) { return ModelCheck{false, std::move(why)}; };
    const int n = t.size();
    if (h.has_loops()) return fail("pattern has loops; subdivide them first");
    if (static_cast<int>(model.vertex_map.size()) != h.n) return fail("vertex map has wrong length");
    if (model.paths.size() != h.arcs.size()) return fail("one path per pattern arc is required");

    std::vector<int> image_of(n, -1);
    for (int u = 0; u < h.n; ++u) {
        Vertex x = model.vertex_map[u];
        if (x < 0 || x >= n) return fail("vertex image out of range");
        if (image_of[x] != -1) return fail("vertex map is not injective");
        image_of[x] = u;
    }
    if (mode == ContainmentMode::RootedImmersion) {
        if (host_roots.size() != h.roots.size()) return fail("root count mismatch");
        for (size_t i = 0; i < h.roots.size(); ++i)
            if (model.vertex_map[h.roots[i]] != host_roots[i])
                return fail("root " + std::to_string(i + 1) + " is not mapped to its host root");
    }

    std::set<Arc> used_arcs;
    std::vector<char> used_interior(n, 0);
    for (size_t e = 0; e < h.arcs.size(); ++e) {
        const auto& path = model.paths[e];
        auto [u, v] = h.arcs[e];
        std::string tag = "path " + std::to_string(e + 1) + ": ";
        if (path.size() < 2) return fail(tag + "too short");
        if (path.front() != model.vertex_map[u] || path.back() != model.vertex_map[v])
            return fail(tag + "endpoints do not match the vertex map");
        std::set<Vertex> seen;
        for (size_t i = 0; i < path.size(); ++i) {
            Vertex x = path[i];
            if (x < 0 || x >= n) return fail(tag + "vertex out of range");
            if (!seen.insert(x).second) return fail(tag + "repeats a vertex");
            if (i + 1 < path.size()) {
                if (!t.has_arc(x, path[i + 1])) return fail(tag + "uses a missing arc");
                // Distinct pattern arcs never share a host arc, so parallel
                // pattern arcs need distinct paths in every mode.
                if (!used_arcs.insert({x, path[i + 1]}).second)
                    return fail(tag + "reuses an arc of another path");
            }
            if (mode == ContainmentMode::Topological && i > 0 && i + 1 < path.size()) {
                if (image_of[x] != -1) return fail(tag + "passes through a branch vertex");
                if (used_interior[x]) return fail(tag + "shares an interior vertex with another path");
                used_interior[x] = 1;
            }
        }
    }
    return {true, ""};
}

std::string format_model(const PatternDigraph& h, const Model& model) {
    std::ostringstream out;
    out << "MODEL\n";
    for (int u = 0; u < h.n; ++u) out << u + 1 << " -> " << model.vertex_map[u] + 1 << '\n';
    for (size_t e = 0; e < model.paths.size(); ++e) {
        out << h.arcs[e].first + 1 << ' ' << h.arcs[e].second + 1 << " :";
        for (Vertex x : model.paths[e]) out << ' ' << x + 1;
        out << '\n';
    }
    return out.str();
}

}  // namespace scd
