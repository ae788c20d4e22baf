#pragma once

namespace skillc {

inline constexpr char kCompilerVersion[] = "0.1.0";

}  // namespace skillc
