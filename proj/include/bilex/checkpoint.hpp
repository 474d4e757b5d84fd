#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bilex/sampler.hpp"

namespace bilex {

inline constexpr int kCheckpointVersion = 1;

// Self-describing training artifact: model kind, hyperparameters, both
// vocabularies as strings and, optionally, the full sampler state and/or the
// averaged estimates. Serialized as JSON; see docs/checkpoint-format.md.
struct Checkpoint {
  ModelKind model = ModelKind::kBiLda;
  HyperParams hp;
  std::array<std::vector<std::string>, 2> vocab;  // indexed by Side
  std::optional<SamplerState> state;
  std::optional<PosteriorEstimates> estimates;
};

std::string serialize_checkpoint(const Checkpoint& checkpoint);
// Throws bilex::Error on a foreign format tag, an unknown version or any
// structural inconsistency; nothing is returned on failure.
Checkpoint parse_checkpoint(const std::string& text);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace bilex
