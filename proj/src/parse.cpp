#include "polyfib/parse.hpp"

#include <sstream>

namespace polyfib {

namespace {

bool parse_int(const std::string& tok, int64_t& out) {
    if (tok.empty()) return false;
    size_t i = tok[0] == '-' || tok[0] == '+' ? 1 : 0;
    if (i == tok.size()) return false;
    for (size_t k = i; k < tok.size(); ++k)
        if (!isdigit(static_cast<unsigned char>(tok[k]))) return false;
    try {
        out = std::stoll(tok);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace

std::vector<PolytopeRecord> parse_vertex_list(std::istream& in) {
    std::vector<PolytopeRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream hs(line);
        std::vector<std::string> toks;
        std::string t;
        while (hs >> t) toks.push_back(t);
        if (toks.empty()) continue;  // blank separator

        int64_t r, c;
        if (toks.size() < 2 || !parse_int(toks[0], r) || !parse_int(toks[1], c))
            throw ParseError(line_no, "malformed header, expected two integers");
        if (r <= 0 || c <= 0) throw ParseError(line_no, "header dimensions must be positive");
        std::string label;
        for (size_t i = 2; i < toks.size(); ++i) {
            if (!label.empty()) label += ' ';
            label += toks[i];
        }

        std::vector<std::vector<int64_t>> rows;
        for (int64_t i = 0; i < r; ++i) {
            if (!std::getline(in, line))
                throw ParseError(line_no, "unexpected end of input inside a record");
            ++line_no;
            std::istringstream rs(line);
            std::vector<int64_t> row;
            while (rs >> t) {
                int64_t x;
                if (!parse_int(t, x)) throw ParseError(line_no, "non-integer token '" + t + "'");
                row.push_back(x);
            }
            if (static_cast<int64_t>(row.size()) != c)
                throw ParseError(line_no, "expected " + std::to_string(c) + " entries, found " +
                                              std::to_string(row.size()));
            rows.push_back(std::move(row));
        }

        // r < c (or square): rows are coordinates, columns are vertices
        bool rows_are_coords = r <= c;
        int64_t dim = rows_are_coords ? r : c;
        int64_t nverts = rows_are_coords ? c : r;
        if (dim != 2 && dim != 3)
            throw ParseError(line_no, "polytope dimension must be 2 or 3, got " +
                                          std::to_string(dim));
        PolytopeRecord rec;
        rec.label = label;
        for (int64_t v = 0; v < nverts; ++v) {
            auto at = [&](int64_t d) {
                return rows_are_coords ? rows[static_cast<size_t>(d)][static_cast<size_t>(v)]
                                       : rows[static_cast<size_t>(v)][static_cast<size_t>(d)];
            };
            if (dim == 2)
                rec.vertices.emplace_back(at(0), at(1), Lattice::N);
            else
                rec.vertices.emplace_back(at(0), at(1), at(2), Lattice::N);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<PolytopeRecord> parse_vertex_list(const std::string& text) {
    std::istringstream is(text);
    return parse_vertex_list(is);
}

}  // namespace polyfib
