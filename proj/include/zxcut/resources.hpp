#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zxcut {

// Files under data/, compiled into the library. Names are relative, e.g. "circuits/msc_d3.zxcirc".
std::string_view resource(std::string_view name);
bool has_resource(std::string_view name);
std::vector<std::string> resource_names();

}  // namespace zxcut
