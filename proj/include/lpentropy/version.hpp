#pragma once

namespace lpentropy {

inline constexpr const char* version = "0.1.0";

}
