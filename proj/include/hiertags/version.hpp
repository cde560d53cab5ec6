#pragma once

namespace hiertags {

inline constexpr const char* version = "0.1.0";

}  // namespace hiertags
