#pragma once

namespace discordlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace discordlab
