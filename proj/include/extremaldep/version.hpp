// SPDX-License-Identifier: MIT
#pragma once

namespace extremaldep {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace extremaldep
