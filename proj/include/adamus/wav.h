#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "adamus/synth.h"

namespace adamus {

// Writes canonical RIFF/WAVE: PCM, mono, 16-bit signed little-endian.
// Floats are quantized with round(x * 32767) clamped to [-32768, 32767].
// Returns the number of bytes written (44-byte header + data).
std::size_t write_wav(const AudioBuffer& buffer,
                      const std::filesystem::path& path);

struct WavData {
  int sample_rate;
  std::vector<std::int16_t> samples;
};

// Reads a PCM mono 16-bit WAV back; rejects anything else.
WavData read_wav(const std::filesystem::path& path);

}  // namespace adamus
