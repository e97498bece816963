#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scd/digraph.hpp"

namespace scd {

// All text formats use 1-based vertex ids; in memory ids are 0-based.
// Parsers are strict and throw InputError with the offending line.

// `n m` followed by m lines `u v`.
RawDigraph parse_digraph(std::istream& in);
RawDigraph parse_digraph_string(const std::string& text);
void write_digraph(std::ostream& out, const Digraph& d);

// `n m t`, then the t roots, then m lines `u v` (repeats are multiplicity, `u u` a loop).
PatternDigraph parse_pattern(std::istream& in);
PatternDigraph parse_pattern_string(const std::string& text);
void write_pattern(std::ostream& out, const PatternDigraph& h);

// One bag per line; blank lines and `#` comments are skipped.
std::vector<std::vector<Vertex>> parse_bags(std::istream& in, int n);
void write_bags(std::ostream& out, const std::vector<std::vector<Vertex>>& bags);

// Three lines `A: ...`, `B: ...`, `C: ...`.
struct TripleParts {
    std::vector<Vertex> a, b, c;
};
TripleParts parse_triple_parts(std::istream& in, int n);

// Space separated 1-based ids.
std::string format_ids(const std::vector<Vertex>& ids);

// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace scd
