#pragma once

namespace specdecay {

inline constexpr const char* kArtifactName = "specdecay";
inline constexpr const char* kVersion = "0.1.0";

} // namespace specdecay
