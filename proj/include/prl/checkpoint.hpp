#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "prl/primes.hpp"

namespace prl {

// Checkpoint files are UTF-8 CSV with header "n,pi" and rows of two
// base-10 integers, strictly increasing in n. The first data row may be
// "1,0".

// Parses a checkpoint file. Throws CorruptCheckpointError on malformed
// rows or non-increasing n.
std::vector<PiCheckpoint> load_checkpoints(const std::filesystem::path& path);

// Writes atomically: temp file in the same directory, then rename.
void write_checkpoints(const std::filesystem::path& path,
                       std::span<const PiCheckpoint> checkpoints);

// Re-verifies the last checkpoint by recomputing the prime count over the
// span from the second-to-last checkpoint (or from the origin when there
// is only one). Throws CorruptCheckpointError on mismatch.
void verify_last_checkpoint(const Sieve& sieve,
                            std::span<const PiCheckpoint> checkpoints);

}  // namespace prl
