#pragma once

namespace lpsw {

// Embedded in run artifacts so results can be traced to the code that made
// them. Bump on any change that affects numerical output.
inline constexpr const char* kVersion = "lpsw 0.1.0";

}  // namespace lpsw
