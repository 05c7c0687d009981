#pragma once

#include <bit>
#include <cstring>
#include <string>
#include <vector>

#include "vicinity/common.hpp"

namespace vicinity {

// Little-endian binary container used by every oracle:
//
//   offset  size  field
//   0       4     magic "VCNO"
//   4       4     format version (u32)
//   8       1     kind: 1 tz, 2 stretch2, 3 mult, 4 additive
//   9       1     mode byte (variant / additive mode)
//   10      8     n (u64)
//   18      4     k (u32)
//   22      8     seed (u64)
//   30      ...   kind-specific body; vectors are a u64 length then elements
//
// Doubles are written as their IEEE-754 bit pattern, so equal oracles give
// byte-identical files.
inline constexpr char kMagic[4] = {'V', 'C', 'N', 'O'};
inline constexpr std::uint32_t kFormatVersion = 1;

enum class ContainerKind : std::uint8_t { tz = 1, stretch2 = 2, mult = 3, additive = 4 };

struct ContainerHeader {
  ContainerKind kind = ContainerKind::tz;
  std::uint8_t mode = 0;
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
};

class ByteWriter {
 public:
  template <class T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    bytes_.append(reinterpret_cast<const char*>(buf), sizeof(T));
  }
  void u8(std::uint8_t v) { put(v); }
  void u32(std::uint32_t v) { put(v); }
  void u64(std::uint64_t v) { put(v); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }

  template <class T, class Fn>
  void seq(const std::vector<T>& xs, Fn&& each) {
    u64(xs.size());
    for (const T& x : xs) each(x);
  }
  void ids(const std::vector<NodeId>& xs) {
    seq(xs, [this](NodeId x) { u32(x); });
  }
  void weights(const std::vector<Weight>& xs) {
    seq(xs, [this](Weight x) { f64(x); });
  }

  void header(const ContainerHeader& h) {
    bytes_.append(kMagic, 4);
    u32(kFormatVersion);
    u8(static_cast<std::uint8_t>(h.kind));
    u8(h.mode);
    u64(h.n);
    u32(h.k);
    u64(h.seed);
  }

  const std::string& bytes() const noexcept { return bytes_; }
  std::string take() { return std::move(bytes_); }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  template <class T>
  T get() {
    if (pos_ + sizeof(T) > data_.size()) throw ParseError(0, "truncated oracle container");
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    pos_ += sizeof(T);
    T out;
    std::memcpy(&out, buf, sizeof(T));
    return out;
  }
  std::uint8_t u8() { return get<std::uint8_t>(); }
  std::uint32_t u32() { return get<std::uint32_t>(); }
  std::uint64_t u64() { return get<std::uint64_t>(); }
  double f64() { return std::bit_cast<double>(get<std::uint64_t>()); }

  std::size_t length() {
    const std::uint64_t len = u64();
    if (len > data_.size() - pos_) throw ParseError(0, "corrupt length in oracle container");
    return static_cast<std::size_t>(len);
  }
  template <class T, class Fn>
  std::vector<T> seq(Fn&& each) {
    std::vector<T> out(length());
    for (T& x : out) x = each();
    return out;
  }
  std::vector<NodeId> ids() {
    return seq<NodeId>([this] { return u32(); });
  }
  std::vector<Weight> weights() {
    return seq<Weight>([this] { return f64(); });
  }

  ContainerHeader header() {
    if (data_.size() < 4 || std::memcmp(data_.data(), kMagic, 4) != 0) throw ParseError(0, "not an oracle container");
    pos_ = 4;
    if (u32() != kFormatVersion) throw ParseError(0, "unsupported container version");
    ContainerHeader h;
    h.kind = static_cast<ContainerKind>(u8());
    h.mode = u8();
    h.n = u64();
    h.k = u32();
    h.seed = u64();
    return h;
  }

  bool at_end() const noexcept { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace vicinity
