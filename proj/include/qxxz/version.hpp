#pragma once

namespace qxxz {
inline constexpr const char* kVersion = "0.1.0";
}
