#pragma once

// Big-endian byte writer and an offset-tracking reader.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcsp/error.hpp"

namespace tcsp {

using Bytes = std::vector<std::uint8_t>;

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { be(v, 2); }
  void u32(std::uint32_t v) { be(v, 4); }
  void i32(std::int32_t v) { be(static_cast<std::uint32_t>(v), 4); }
  void u64(std::uint64_t v) { be(v, 8); }
  void raw(std::span<const std::uint8_t> data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void text(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }

  // u32 length prefix followed by the bytes.
  void blob(std::span<const std::uint8_t> data) {
    if (data.size() > UINT32_MAX) throw ContractViolation("blob exceeds 4 GiB");
    u32(static_cast<std::uint32_t>(data.size()));
    raw(data);
  }

  const Bytes& bytes() const& noexcept { return out_; }
  Bytes take() && noexcept { return std::move(out_); }

 private:
  void be(std::uint64_t v, int width) {
    for (int k = width - 1; k >= 0; --k) out_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }

  Bytes out_;
};

// Every failure throws ParseError carrying the absolute offset of the
// offending field (`base` shifts offsets for nested readers).
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data, std::size_t base = 0) : data_(data), base_(base) {}

  std::size_t offset() const noexcept { return base_ + pos_; }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  bool at_end() const noexcept { return pos_ == data_.size(); }

  std::uint8_t u8() { return static_cast<std::uint8_t>(be(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(be(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(be(4)); }
  std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(be(4))); }
  std::uint64_t u64() { return be(8); }

  std::span<const std::uint8_t> raw(std::size_t count) {
    need(count);
    auto out = data_.subspan(pos_, count);
    pos_ += count;
    return out;
  }

  // Reads a u32-length-prefixed blob; returns a reader over its contents.
  ByteReader blob() {
    const std::size_t at = offset();
    const std::uint32_t len = u32();
    if (len > remaining()) fail(at, "length prefix " + std::to_string(len) + " exceeds remaining " + std::to_string(remaining()));
    const std::size_t start = offset();
    return ByteReader(raw(len), start);
  }

  void expect_text(std::string_view magic, std::string_view what) {
    const std::size_t at = offset();
    if (remaining() < magic.size()) fail(at, "truncated " + std::string(what));
    auto got = raw(magic.size());
    if (!std::equal(got.begin(), got.end(), magic.begin())) fail(at, "bad " + std::string(what));
  }

  void expect_end(std::string_view what) {
    if (!at_end()) fail(offset(), std::to_string(remaining()) + " trailing bytes after " + std::string(what));
  }

  [[noreturn]] static void fail(std::size_t at, const std::string& what) { throw ParseError(at, what); }

 private:
  void need(std::size_t count) const {
    if (count > remaining()) {
      fail(offset(), "truncated input: need " + std::to_string(count) + " bytes, have " + std::to_string(remaining()));
    }
  }

  std::uint64_t be(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < width; ++k) v = v << 8 | data_[pos_ + k];
    pos_ += width;
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace tcsp
