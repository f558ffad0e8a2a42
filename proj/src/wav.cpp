#include "adamus/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace adamus {

namespace {

void put_u16(std::ostream& out, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff),
                         static_cast<char>((v >> 8) & 0xff)};
  out.write(bytes, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff),
                         static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff),
                         static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char bytes[2];
  in.read(reinterpret_cast<char*>(bytes), 2);
  return static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

std::int16_t quantize(double sample) {
  long q = std::lround(sample * 32767.0);
  q = std::clamp(q, -32768L, 32767L);
  return static_cast<std::int16_t>(q);
}

}  // namespace

std::size_t write_wav(const AudioBuffer& buffer,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_wav: cannot open " + path.string());
  }

  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(buffer.samples.size() * 2);
  const std::uint32_t sample_rate =
      static_cast<std::uint32_t>(buffer.sample_rate);

  out.write("RIFF", 4);
  put_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);

  out.write("fmt ", 4);
  put_u32(out, 16);                   // fmt chunk size
  put_u16(out, 1);                    // PCM
  put_u16(out, 1);                    // mono
  put_u32(out, sample_rate);
  put_u32(out, sample_rate * 2);      // byte rate
  put_u16(out, 2);                    // block align
  put_u16(out, 16);                   // bits per sample

  out.write("data", 4);
  put_u32(out, data_bytes);
  for (double sample : buffer.samples) {
    put_u16(out, static_cast<std::uint16_t>(quantize(sample)));
  }

  if (!out) {
    throw std::runtime_error("write_wav: write failed for " + path.string());
  }
  return 44 + data_bytes;
}

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_wav: cannot open " + path.string());
  }
  const auto fail = [&path](const std::string& why) -> std::runtime_error {
    return std::runtime_error("read_wav: " + path.string() + ": " + why);
  };

  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0) throw fail("not a RIFF file");
  get_u32(in);  // riff size, unused
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0) throw fail("not a WAVE file");

  bool have_fmt = false;
  WavData data{0, {}};
  while (in.read(tag, 4)) {
    const std::uint32_t chunk_size = get_u32(in);
    if (!in) throw fail("truncated chunk header");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw fail("fmt chunk too small");
      const std::uint16_t format = get_u16(in);
      const std::uint16_t channels = get_u16(in);
      const std::uint32_t sample_rate = get_u32(in);
      get_u32(in);  // byte rate
      get_u16(in);  // block align
      const std::uint16_t bits = get_u16(in);
      if (format != 1) throw fail("not PCM");
      if (channels != 1) throw fail("not mono");
      if (bits != 16) throw fail("not 16-bit");
      data.sample_rate = static_cast<int>(sample_rate);
      in.ignore(chunk_size - 16);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw fail("data chunk before fmt chunk");
      if (chunk_size % 2 != 0) throw fail("odd data chunk size");
      data.samples.resize(chunk_size / 2);
      for (auto& sample : data.samples) {
        sample = static_cast<std::int16_t>(get_u16(in));
      }
      if (!in) throw fail("truncated data chunk");
      return data;
    } else {
      in.ignore(chunk_size + (chunk_size % 2));  // chunks are word-aligned
    }
  }
  throw fail("no data chunk");
}

}  // namespace adamus
