#pragma once

namespace residuum {

inline constexpr const char* kToolkitVersion = "residuum 0.1.0";

} // namespace residuum
