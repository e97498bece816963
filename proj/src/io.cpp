#include "scd/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "scd/errors.hpp"

namespace scd {

namespace {

// Tokenizer that remembers line numbers for error messages.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    long long next_int(const char* what) {
        std::string tok;
        if (!next(tok)) fail(std::string("unexpected end of input, expected ") + what);
        size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            fail("expected integer for " + std::string(what) + ", got '" + tok + "'");
        }
        if (pos != tok.size()) fail("expected integer for " + std::string(what) + ", got '" + tok + "'");
        return v;
    }
    Vertex next_vertex(int n, const char* what) {
        long long v = next_int(what);
        if (v < 1 || v > n) fail(std::string(what) + " " + std::to_string(v) + " out of range 1.." + std::to_string(n));
        return static_cast<Vertex>(v - 1);
    }
    void expect_end() {
        std::string tok;
        if (next(tok)) fail("trailing data '" + tok + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("line " + std::to_string(line_) + ": " + msg);
    }

private:
    bool next(std::string& tok) {
        while (true) {
            if (cur_ >> tok) return true;
            std::string line;
            if (!std::getline(in_, line)) return false;
            ++line_;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            cur_.clear();
            cur_.str(line);
        }
    }
    std::istream& in_;
    std::istringstream cur_;
    int line_ = 0;
};

}  // namespace

RawDigraph parse_digraph(std::istream& in) {
    TokenReader r(in);
    RawDigraph d;
    long long n = r.next_int("vertex count");
    long long m = r.next_int("arc count");
    if (n < 0 || m < 0) r.fail("counts must be non-negative");
    d.n = static_cast<int>(n);
    for (long long i = 0; i < m; ++i) {
        Vertex u = r.next_vertex(d.n, "arc tail");
        Vertex v = r.next_vertex(d.n, "arc head");
        d.arcs.emplace_back(u, v);
    }
    r.expect_end();
    return d;
}

RawDigraph parse_digraph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_digraph(in);
}

void write_digraph(std::ostream& out, const Digraph& d) {
    auto arcs = d.arcs();
    out << d.size() << ' ' << arcs.size() << '\n';
    for (auto [u, v] : arcs) out << u + 1 << ' ' << v + 1 << '\n';
}

PatternDigraph parse_pattern(std::istream& in) {
    TokenReader r(in);
    PatternDigraph h;
    long long n = r.next_int("vertex count");
    long long m = r.next_int("arc count");
    long long t = r.next_int("root count");
    if (n < 0 || m < 0 || t < 0) r.fail("counts must be non-negative");
    if (t > n) r.fail("more roots than vertices");
    h.n = static_cast<int>(n);
    std::vector<char> seen(h.n, 0);
    for (long long i = 0; i < t; ++i) {
        Vertex v = r.next_vertex(h.n, "root");
        if (seen[v]) r.fail("repeated root " + std::to_string(v + 1));
        seen[v] = 1;
        h.roots.push_back(v);
    }
    for (long long i = 0; i < m; ++i) {
        Vertex u = r.next_vertex(h.n, "arc tail");
        Vertex v = r.next_vertex(h.n, "arc head");
        h.arcs.emplace_back(u, v);
    }
    r.expect_end();
    return h;
}

PatternDigraph parse_pattern_string(const std::string& text) {
    std::istringstream in(text);
    return parse_pattern(in);
}

void write_pattern(std::ostream& out, const PatternDigraph& h) {
    out << h.n << ' ' << h.arcs.size() << ' ' << h.roots.size() << '\n';
    out << format_ids(h.roots) << '\n';
    for (auto [u, v] : h.arcs) out << u + 1 << ' ' << v + 1 << '\n';
}

std::vector<std::vector<Vertex>> parse_bags(std::istream& in, int n) {
    std::vector<std::vector<Vertex>> bags;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<Vertex> bag;
        std::string tok;
        while (ls >> tok) {
            size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || pos == 0)
                throw InputError("line " + std::to_string(lineno) + ": bad vertex id '" + tok + "'");
            if (v < 1 || v > n)
                throw InputError("line " + std::to_string(lineno) + ": vertex " + tok + " out of range");
            bag.push_back(static_cast<Vertex>(v - 1));
        }
        if (!bag.empty()) bags.push_back(std::move(bag));
    }
    return bags;
}

void write_bags(std::ostream& out, const std::vector<std::vector<Vertex>>& bags) {
    for (const auto& b : bags) out << format_ids(b) << '\n';
}

TripleParts parse_triple_parts(std::istream& in, int n) {
    TripleParts parts;
    bool have[3] = {false, false, false};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string label;
        if (!(ls >> label)) continue;
        std::vector<Vertex>* target = nullptr;
        int idx = -1;
        if (label == "A:") idx = 0, target = &parts.a;
        else if (label == "B:") idx = 1, target = &parts.b;
        else if (label == "C:") idx = 2, target = &parts.c;
        else throw InputError("line " + std::to_string(lineno) + ": expected 'A:', 'B:' or 'C:'");
        if (have[idx]) throw InputError("line " + std::to_string(lineno) + ": part " + label + " repeated");
        have[idx] = true;
        long long v;
        while (ls >> v) {
            if (v < 1 || v > n)
                throw InputError("line " + std::to_string(lineno) + ": vertex out of range");
            target->push_back(static_cast<Vertex>(v - 1));
        }
        if (!ls.eof()) throw InputError("line " + std::to_string(lineno) + ": bad vertex id");
    }
    if (!have[0] || !have[1] || !have[2]) throw InputError("triple file needs lines A:, B: and C:");
    return parts;
}

std::string format_ids(const std::vector<Vertex>& ids) {
    std::string s;
    for (Vertex v : ids) {
        if (!s.empty()) s += ' ';
        s += std::to_string(v + 1);
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace scd
