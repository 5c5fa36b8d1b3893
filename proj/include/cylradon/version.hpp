#pragma once

namespace cylradon {

inline constexpr const char* version = "0.1.0";

}  // namespace cylradon
