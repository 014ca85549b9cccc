#pragma once

namespace levyfront {

inline constexpr const char* kProjectVersion = "0.1.0";

}  // namespace levyfront
