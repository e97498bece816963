#include "scd/separation.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "scd/errors.hpp"

namespace scd {

SeparationCheck is_separation(const Digraph& d, const VertexSet& a, const VertexSet& b) {
    SeparationCheck r;
    r.order = a.intersection_count(b);
    if (!(a | b).subset_of(d.all()) || (a | b).count() != d.size()) return r;
    VertexSet left = a - b, right = b - a;
    bool ok = true;
    left.for_each([&](int v) {
        if (ok && d.out(v).intersects(right)) ok = false;
    });
    r.valid = ok;
    return r;
}

namespace {
bool nested(const Separation& inner, const Separation& outer) {
    return inner.a.subset_of(outer.a) && outer.b.subset_of(inner.b);
}
}  // namespace

bool crosses(const Separation& s1, const Separation& s2) {
    return !nested(s2, s1) && !nested(s1, s2);
}

bool k_close(const Separation& s1, const Separation& s2, int k) {
    if (crosses(s1, s2)) throw InputError("k_close: separations cross");
    const Separation& first = nested(s1, s2) ? s1 : s2;
    const Separation& second = nested(s1, s2) ? s2 : s1;
    int between = (first.b - first.a).intersection_count(second.a - second.b);
    return between < k * std::abs(first.order() - second.order());
}

std::vector<Separation> sort_cross_free(std::vector<Separation> family) {
    std::stable_sort(family.begin(), family.end(), [](const Separation& x, const Separation& y) {
        int ax = x.a.count(), ay = y.a.count();
        if (ax != ay) return ax < ay;
        return x.b.count() > y.b.count();
    });
    for (size_t i = 0; i + 1 < family.size(); ++i) {
        if (!nested(family[i], family[i + 1]))
            throw InputError("sort_cross_free: family contains crossing separations");
    }
    return family;
}

std::string format_separation(const Separation& s) {
    return "A: " + s.a.str(1) + " | B: " + s.b.str(1);
}

Separation parse_separation(const std::string& text, int n) {
    auto bar = text.find('|');
    if (bar == std::string::npos) throw InputError("separation: missing '|'");
    auto parse_side = [&](std::string part, const char* label) {
        std::istringstream in(part);
        std::string tag;
        if (!(in >> tag) || tag != label) throw InputError(std::string("separation: expected ") + label);
        VertexSet s(n);
        long long v;
        while (in >> v) {
            if (v < 1 || v > n) throw InputError("separation: vertex out of range");
            s.insert(static_cast<int>(v - 1));
        }
        if (!in.eof()) throw InputError("separation: bad vertex id");
        return s;
    };
    return {parse_side(text.substr(0, bar), "A:"), parse_side(text.substr(bar + 1), "B:")};
}

}  // namespace scd
