#include "spot/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

namespace spot {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

class Reader {
 public:
  Reader(const std::string& bytes, const std::filesystem::path& path)
      : bytes_(bytes), path_(path) {}

  std::size_t offset() const { return pos_; }

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }

  std::string str(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  float f32() { return std::bit_cast<float>(u32()); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > bytes_.size())
      throw TruncatedPayloadError(path_.string() + ": truncated at byte offset " +
                                  std::to_string(pos_) + " (need " + std::to_string(n) +
                                  " more bytes, have " + std::to_string(bytes_.size() - pos_) + ")");
  }

  const std::string& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_checkpoint(const Prompt& p, const std::filesystem::path& path, bool overwrite) {
  validate_prompt_shape(p.tokens);
  if (p.task_name.size() > std::numeric_limits<std::uint32_t>::max())
    throw InvalidInputError("task name too long");
  if (!overwrite && std::filesystem::exists(path))
    throw PathExistsError(path.string() + " already exists");

  std::string out;
  out.reserve(64 + p.task_name.size() + p.tokens.data().size() * 4);
  out.append(kCheckpointMagic, 4);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(p.task_name.size()));
  out.append(p.task_name);
  put_u32(out, p.run_seed);
  put_u64(out, p.step);
  put_u32(out, static_cast<std::uint32_t>(p.tokens.rows()));
  put_u32(out, static_cast<std::uint32_t>(p.tokens.cols()));
  out.push_back(0);  // dtype 0 = float32
  for (const double v : p.tokens.data()) put_f32(out, static_cast<float>(v));

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("short write to " + path.string());
}

Prompt read_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for reading");
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

  Reader r(bytes, path);
  const std::string magic = r.str(4);
  if (std::memcmp(magic.data(), kCheckpointMagic, 4) != 0)
    throw BadMagicError(path.string() + ": bad magic at byte offset 0");
  const std::size_t version_offset = r.offset();
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion)
    throw UnsupportedVersionError(path.string() + ": unsupported version " +
                                  std::to_string(version) + " at byte offset " +
                                  std::to_string(version_offset));

  Prompt p;
  const std::uint32_t name_len = r.u32();
  p.task_name = r.str(name_len);
  p.run_seed = r.u32();
  p.step = r.u64();
  const std::uint32_t rows = r.u32();
  const std::uint32_t cols = r.u32();
  const std::size_t dtype_offset = r.offset();
  const std::uint8_t dtype = r.u8();
  if (dtype != 0)
    throw UnsupportedVersionError(path.string() + ": unsupported dtype " + std::to_string(dtype) +
                                  " at byte offset " + std::to_string(dtype_offset));
  if (rows < 1 || cols < 1)
    throw TruncatedPayloadError(path.string() + ": zero-sized shape " + std::to_string(rows) +
                                "x" + std::to_string(cols) + " at byte offset " +
                                std::to_string(dtype_offset - 8));

  p.tokens = Matrix(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) p.tokens(i, j) = static_cast<double>(r.f32());
  validate_prompt_shape(p.tokens);
  return p;
}

}  // namespace spot
