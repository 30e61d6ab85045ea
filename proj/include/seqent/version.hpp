#pragma once

namespace seqent {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace seqent
