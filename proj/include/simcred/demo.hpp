#pragma once

#include <cstdint>
#include <filesystem>

namespace simcred {

// Writes a paired experiment/simulation dataset (sensor noise traces, a step
// response pair, and a sweep-test pair) plus manifest.json into out_dir.
// Returns the manifest path. Output depends only on the seed.
std::filesystem::path write_demo_dataset(const std::filesystem::path& out_dir, std::uint64_t seed = 1);

}  // namespace simcred
