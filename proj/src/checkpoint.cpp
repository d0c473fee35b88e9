#include "prl/checkpoint.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>

namespace prl {

namespace {

int64_t parse_int(std::string_view text, const std::filesystem::path& path) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw CorruptCheckpointError("bad integer in checkpoint file " +
                                 path.string() + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<PiCheckpoint> load_checkpoints(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CorruptCheckpointError("cannot open checkpoint file " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "n,pi") {
    throw CorruptCheckpointError("missing 'n,pi' header in " + path.string());
  }
  std::vector<PiCheckpoint> checkpoints;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw CorruptCheckpointError("malformed row in " + path.string() + ": '" +
                                   line + "'");
    }
    PiCheckpoint cp;
    cp.n = parse_int(std::string_view(line).substr(0, comma), path);
    cp.pi_n = parse_int(std::string_view(line).substr(comma + 1), path);
    if (cp.n < 1 || cp.pi_n < 0) {
      throw CorruptCheckpointError("out-of-range row in " + path.string());
    }
    if (!checkpoints.empty() && cp.n <= checkpoints.back().n) {
      throw CorruptCheckpointError("checkpoint n values not strictly increasing in " +
                                   path.string());
    }
    checkpoints.push_back(cp);
  }
  return checkpoints;
}

void write_checkpoints(const std::filesystem::path& path,
                       std::span<const PiCheckpoint> checkpoints) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw Error("cannot write checkpoint file " + tmp.string());
    }
    out << "n,pi\n";
    for (const PiCheckpoint& cp : checkpoints) {
      out << cp.n << ',' << cp.pi_n << '\n';
    }
    out.flush();
    if (!out) {
      throw Error("write failed for checkpoint file " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error("rename failed for checkpoint file " + path.string() + ": " +
                ec.message());
  }
}

void verify_last_checkpoint(const Sieve& sieve,
                            std::span<const PiCheckpoint> checkpoints) {
  if (checkpoints.empty()) return;
  const PiCheckpoint& last = checkpoints.back();
  PiCheckpoint prev{1, 0, last.stride};
  if (checkpoints.size() >= 2) prev = checkpoints[checkpoints.size() - 2];
  if (last.n > sieve.bound()) {
    throw CorruptCheckpointError("checkpoint n beyond global bound");
  }
  int64_t count = 0;
  if (last.n >= 2) {
    sieve.for_each_segment(std::max<int64_t>(prev.n + 1, 2), last.n + 1,
                           [&](const SieveSegment& seg) {
      count += seg.prime_count();
      return true;
    });
  }
  if (prev.pi_n + count != last.pi_n) {
    throw CorruptCheckpointError(
        "checkpoint verification failed: recomputed pi(" +
        std::to_string(last.n) + ") = " + std::to_string(prev.pi_n + count) +
        " but file says " + std::to_string(last.pi_n));
  }
}

}  // namespace prl
