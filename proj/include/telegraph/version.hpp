#pragma once

namespace telegraph {
inline constexpr const char* kVersion = "1.0.0";
}
