#ifndef TRACKLETS_CHECKPOINT_HPP_
#define TRACKLETS_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracklets/nets.hpp"

namespace tracklets {

// Binary layout (all integers little-endian uint32, payload little-endian
// float32):
//
//   "TRKLTNET"                      8-byte magic
//   version
//   tensor count
//   per tensor: name length, name bytes, rank, dims..., row-major values
//
// Tensor names are "agent<i>/<parameter name>" with parameter names as
// produced by nets::for_each_tensor.
inline constexpr char kCheckpointMagic[8] = {'T', 'R', 'K', 'L', 'T', 'N', 'E', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  std::vector<nets::NetParams<float>> agents;
};

class CheckpointVersionError : public std::runtime_error {
 public:
  CheckpointVersionError(std::uint32_t found, std::uint32_t expected)
      : std::runtime_error("checkpoint format version " + std::to_string(found) +
                           " is not supported (this build reads version " +
                           std::to_string(expected) + ")"),
        found_(found),
        expected_(expected) {}
  std::uint32_t found() const { return found_; }
  std::uint32_t expected() const { return expected_; }

 private:
  std::uint32_t found_;
  std::uint32_t expected_;
};

std::vector<std::uint8_t> serialize_checkpoint(const Checkpoint& ckpt,
                                               std::uint32_t version = kCheckpointVersion);
Checkpoint deserialize_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace tracklets

#endif  // TRACKLETS_CHECKPOINT_HPP_
