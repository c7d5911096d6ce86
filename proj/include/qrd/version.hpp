#pragma once

namespace qrd {

inline constexpr const char* version_string = "0.1.0";

}
