#pragma once

namespace winprob {
inline constexpr const char* kVersion = "0.1.0";
}
