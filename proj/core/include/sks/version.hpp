#pragma once

namespace sks {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sks
