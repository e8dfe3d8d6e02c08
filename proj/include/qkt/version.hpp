#pragma once

namespace qkt {
inline constexpr const char* version = "0.1.0";
}
