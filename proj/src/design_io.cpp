#include "bsa/design_io.hpp"

#include <charconv>
#include <sstream>

#include "bsa/errors.hpp"

namespace bsa {

namespace {

int read_int(std::string_view s, std::size_t& i) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc()) throw ParseError("expected integer in '" + std::string(s) + "'");
    i = std::size_t(p - s.data());
    return v;
}

void expect(std::string_view s, std::size_t& i, char ch) {
    if (i >= s.size() || s[i] != ch)
        throw ParseError(std::string("expected '") + ch + "' in '" + std::string(s) + "'");
    ++i;
}

} // namespace

std::string format_block(const Block& b) {
    std::string out;
    for (const auto& p : b) out += "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
    return out;
}

int parse_block_line(std::string_view line, Block& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size() && line[i] == '(') {
        ++i;
        GridPoint p;
        p.row = read_int(line, i);
        expect(line, i, ',');
        p.col = read_int(line, i);
        expect(line, i, ')');
        out.push_back(p);
    }
    if (out.empty()) throw ParseError("expected a block in '" + std::string(line) + "'");
    if (i == line.size()) return 1;
    expect(line, i, ' ');
    expect(line, i, 'x');
    int mult = read_int(line, i);
    if (i != line.size() || mult < 1) throw ParseError("bad multiplicity in '" + std::string(line) + "'");
    return mult;
}

std::string format_design(const Design& d) {
    const auto& p = d.params;
    std::string out = scheme_name(p.scheme) + " " + std::to_string(p.r) + " " + std::to_string(p.c) + " " +
                      std::to_string(p.k) + " " + std::to_string(p.lambda) + "\n";
    for (const auto& b : d.blocks) out += format_block(b) + "\n";
    return out;
}

Design parse_design(std::string_view text) {
    Design d;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty design file");
    {
        std::istringstream h(line);
        std::string scheme, extra;
        if (!(h >> scheme >> d.params.r >> d.params.c >> d.params.k >> d.params.lambda) || (h >> extra))
            throw ParseError("bad design header '" + line + "'");
        d.params.scheme = parse_scheme(scheme);
    }
    Block b;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int mult = parse_block_line(line, b);
        for (int m = 0; m < mult; ++m) d.blocks.push_back(b);
    }
    return d;
}

} // namespace bsa
