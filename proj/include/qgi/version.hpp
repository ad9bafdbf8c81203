#pragma once

namespace qgi {

inline constexpr const char* version = "0.1.0";

} // namespace qgi
