#pragma once

#include <string_view>

#include "mui/algebra.hpp"

namespace mui::testing {

inline Element el(const Ring& ring, std::string_view text) { return parse_element(ring, text); }

}  // namespace mui::testing
