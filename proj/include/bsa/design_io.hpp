#pragma once

#include <string>
#include <string_view>

#include "bsa/grid.hpp"

namespace bsa {

// text form: header "scheme r c k lambda", then one block per line "(i,j)(i,j)(i,j)"; LF endings
std::string format_design(const Design& d);
Design parse_design(std::string_view text);

// "(i,j)(i,j)..." with an optional trailing " xN"; returns the multiplicity
int parse_block_line(std::string_view line, Block& out);
std::string format_block(const Block& b);

} // namespace bsa
