#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace egp {

// Little-endian binary primitives shared by the graph, checkpoint and
// embedding-bank file formats. Floats cross the file boundary as IEEE-754
// binary32; in-memory math stays in double.

struct SerializeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
template <typename T>
inline T byteswap_if_be(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto* p = reinterpret_cast<unsigned char*>(&v);
    for (size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(p[i], p[sizeof(T) - 1 - i]);
  }
  return v;
}
}  // namespace detail

template <typename T>
inline void write_le(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  v = detail::byteswap_if_be(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
inline T read_le(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw SerializeError("unexpected end of file");
  return detail::byteswap_if_be(v);
}

inline void write_string(std::ostream& os, const std::string& s) {
  write_le<uint32_t>(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::istream& is) {
  const uint32_t n = read_le<uint32_t>(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw SerializeError("unexpected end of file in string");
  return s;
}

// f64 vector <-> f32 payload
inline void write_f32_array(std::ostream& os, const std::vector<double>& v) {
  write_le<uint64_t>(os, v.size());
  for (double d : v) write_le<float>(os, static_cast<float>(d));
}

inline std::vector<double> read_f32_array(std::istream& is) {
  const uint64_t n = read_le<uint64_t>(is);
  std::vector<double> v(n);
  for (uint64_t i = 0; i < n; ++i) v[i] = static_cast<double>(read_le<float>(is));
  return v;
}

inline void write_magic(std::ostream& os, const char magic[4]) { os.write(magic, 4); }

inline void expect_magic(std::istream& is, const char magic[4], const char* what) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::memcmp(buf, magic, 4) != 0)
    throw SerializeError(std::string(what) + ": bad magic");
}

inline uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 14695981039346656037ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

}  // namespace egp
