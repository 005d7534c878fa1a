#ifndef POLYFIB_PARSE_HPP
#define POLYFIB_PARSE_HPP

#include <istream>
#include <string>
#include <vector>

#include "polyfib/lattice.hpp"

namespace polyfib {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

struct PolytopeRecord {
    std::string label;
    std::vector<Vec> vertices;  // role N
};

/// Vertex-list format: a header line "r c" (optionally followed by a label),
/// then an r x c integer matrix. When r < c the rows are coordinates and the
/// columns are vertices; when r > c the rows are vertices. Blank lines separate
/// records.
std::vector<PolytopeRecord> parse_vertex_list(std::istream& in);
std::vector<PolytopeRecord> parse_vertex_list(const std::string& text);

}  // namespace polyfib

#endif
