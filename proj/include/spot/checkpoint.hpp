#pragma once

#include <filesystem>

#include "spot/prompt.hpp"

namespace spot {

// On-disk prompt checkpoint, little-endian throughout:
//
//   offset 0   magic            4 bytes "SPOT"
//          4   version          u32 (currently 1)
//          8   task name length u32, then that many UTF-8 bytes
//          ..  run_seed         u32
//          ..  step             u64
//          ..  L                u32
//          ..  E                u32
//          ..  dtype            u8 (0 = IEEE-754 binary32)
//          ..  payload          L*E float32 values, row-major
//
// Values are narrowed to float32 on write and widened to double on read.
inline constexpr char kCheckpointMagic[4] = {'S', 'P', 'O', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(const Prompt& p, const std::filesystem::path& path, bool overwrite = false);
Prompt read_checkpoint(const std::filesystem::path& path);

}  // namespace spot
