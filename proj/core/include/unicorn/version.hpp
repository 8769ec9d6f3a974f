#pragma once

namespace unicorn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace unicorn
