#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bsa {

// text files from data/, compiled into the library; path relative to data/
std::string_view embedded_file(const std::string& path);
std::vector<std::string> embedded_files(const std::string& prefix = "");

} // namespace bsa
