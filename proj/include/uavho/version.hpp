#pragma once

namespace uavho {
inline constexpr const char* kVersion = "0.1.0";
}
