#pragma once

namespace emograph {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace emograph
