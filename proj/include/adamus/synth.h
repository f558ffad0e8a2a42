#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adamus/core.h"

namespace adamus {

// Seeded uniform random matrix over [lo, hi), row-major. Identical
// parameters always reproduce identical entries.
struct RandomMatrix {
  std::uint64_t seed;
  std::size_t rows;
  std::size_t cols;
  double lo;
  double hi;
  std::vector<double> entries;

  double at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

RandomMatrix generate_random_matrix(std::uint64_t seed, std::size_t rows,
                                    std::size_t cols, double lo, double hi);

// One sine tone: frequency in Hz, nominal duration in seconds, peak
// amplitude in [0, 1].
struct ToneSegment {
  double frequency;
  double duration;
  double amplitude;

  bool operator==(const ToneSegment&) const = default;
};

// Per-mood tone mapping constants.
double base_frequency(MoodCategory mood);
std::span<const int> pitch_steps(MoodCategory mood);
double beat_seconds(MoodCategory mood);

// Buckets x in [0, 1) into the mood's pitch table and returns the tone at
// base_frequency * 2^(step/12), the mood's beat as duration, amplitude 1.
ToneSegment number_to_segment(double x, MoodCategory mood);

// Mono audio, samples in [-1, 1].
struct AudioBuffer {
  int sample_rate;
  std::vector<double> samples;
};

inline constexpr double kFadeSeconds = 0.010;

// Renders the mood's 6-segment loop: segment i is the tone picked by the
// i-th entry of a seeded 1x6 random matrix, peak-scaled by the signature's
// i-th value, with a 10 ms linear fade at both ends. Each segment is
// round(segment_seconds * sample_rate) samples. Bit-deterministic.
AudioBuffer render_mood(MoodCategory mood, const MoodSignature& signature,
                        std::uint64_t seed, double segment_seconds,
                        int sample_rate);

// Splices b onto a with a linear blend over overlap_samples. Output length
// is len(a) + len(b) - overlap_samples; outside the overlap both inputs
// are copied verbatim.
AudioBuffer crossfade(const AudioBuffer& a, const AudioBuffer& b,
                      std::size_t overlap_samples);

}  // namespace adamus
