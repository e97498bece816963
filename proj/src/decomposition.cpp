#include "scd/decomposition.hpp"

#include <algorithm>

#include "scd/errors.hpp"

namespace scd {

int PathDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

namespace {

struct Intervals {
    std::vector<int> first, last;
    std::string problem;
};

// First/last bag index per vertex plus a description of any cover or
// interval violation.
Intervals intervals_of(const PathDecomposition& w, int n) {
    Intervals iv;
    iv.first.assign(n, -1);
    iv.last.assign(n, -1);
    std::vector<int> occurrences(n, 0);
    for (int i = 0; i < static_cast<int>(w.bags.size()); ++i) {
        std::vector<Vertex> bag = w.bags[i];
        std::sort(bag.begin(), bag.end());
        if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
            iv.problem = "bag " + std::to_string(i + 1) + " repeats a vertex";
            return iv;
        }
        for (Vertex v : bag) {
            if (v < 0 || v >= n) {
                iv.problem = "bag " + std::to_string(i + 1) + " has an out-of-range vertex";
                return iv;
            }
            if (iv.first[v] < 0) iv.first[v] = i;
            iv.last[v] = i;
            occurrences[v]++;
        }
    }
    for (int v = 0; v < n; ++v) {
        if (iv.first[v] < 0) {
            iv.problem = "vertex " + std::to_string(v + 1) + " is in no bag";
            return iv;
        }
        if (occurrences[v] != iv.last[v] - iv.first[v] + 1) {
            iv.problem = "bags containing vertex " + std::to_string(v + 1) + " are not consecutive";
            return iv;
        }
    }
    return iv;
}

}  // namespace

DecompositionCheck verify_path_decomposition(const Digraph& t, const PathDecomposition& w) {
    DecompositionCheck r;
    Intervals iv = intervals_of(w, t.size());
    if (!iv.problem.empty()) {
        r.reason = iv.problem;
        return r;
    }
    // With consecutive occurrences, "same bag or tail strictly later" is
    // exactly last(tail) >= first(head).
    for (auto [u, v] : t.arcs()) {
        if (iv.last[u] < iv.first[v]) {
            r.reason = "arc " + std::to_string(u + 1) + "->" + std::to_string(v + 1) +
                       " points from an earlier bag to a later one";
            return r;
        }
    }
    r.valid = true;
    r.width = w.width();
    return r;
}

NiceDecomposition make_nice(const PathDecomposition& w, int n) {
    Intervals iv = intervals_of(w, n);
    if (!iv.problem.empty()) throw InputError("make_nice: " + iv.problem);
    NiceDecomposition nice;
    nice.n = n;
    nice.width = w.width();
    std::vector<Vertex> prev;
    auto sorted = [](std::vector<Vertex> b) {
        std::sort(b.begin(), b.end());
        return b;
    };
    for (size_t i = 0; i <= w.bags.size(); ++i) {
        std::vector<Vertex> cur = i < w.bags.size() ? sorted(w.bags[i]) : std::vector<Vertex>{};
        for (Vertex v : prev)
            if (!std::binary_search(cur.begin(), cur.end(), v)) nice.events.push_back({NiceKind::Forget, v});
        for (Vertex v : cur)
            if (!std::binary_search(prev.begin(), prev.end(), v)) nice.events.push_back({NiceKind::Introduce, v});
        prev = std::move(cur);
    }
    return nice;
}

std::vector<std::vector<Vertex>> nice_bags(const NiceDecomposition& nice) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> bag;
    for (const auto& e : nice.events) {
        if (e.kind == NiceKind::Introduce) {
            bag.insert(std::lower_bound(bag.begin(), bag.end(), e.v), e.v);
        } else {
            bag.erase(std::find(bag.begin(), bag.end(), e.v));
        }
        out.push_back(bag);
    }
    return out;
}

}  // namespace scd
