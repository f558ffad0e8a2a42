#include "adamus/synth.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "adamus/rng.h"

namespace adamus {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Middle C; every mood table is expressed as semitone steps above it.
constexpr double kBaseFrequency = 261.63;

// Pentatonic step tables keep any random draw consonant within its mood;
// Angry deliberately mixes in the tritone and semitone.
constexpr int kSadSteps[] = {0, 3, 5, 7, 10};     // minor pentatonic
constexpr int kHappySteps[] = {0, 2, 4, 7, 9};    // major pentatonic, octave up
constexpr int kNormalSteps[] = {0, 2, 4, 7, 9};   // major pentatonic
constexpr int kAngrySteps[] = {0, 1, 6, 7, 10};

}  // namespace

double base_frequency(MoodCategory mood) {
  return mood == MoodCategory::Happy ? 2.0 * kBaseFrequency : kBaseFrequency;
}

std::span<const int> pitch_steps(MoodCategory mood) {
  switch (mood) {
    case MoodCategory::Sad: return kSadSteps;
    case MoodCategory::Happy: return kHappySteps;
    case MoodCategory::Normal: return kNormalSteps;
    case MoodCategory::Angry: return kAngrySteps;
  }
  return kNormalSteps;
}

double beat_seconds(MoodCategory mood) {
  switch (mood) {
    case MoodCategory::Sad: return 0.8;
    case MoodCategory::Happy: return 0.3;
    case MoodCategory::Normal: return 0.5;
    case MoodCategory::Angry: return 0.25;
  }
  return 0.5;
}

RandomMatrix generate_random_matrix(std::uint64_t seed, std::size_t rows,
                                    std::size_t cols, double lo, double hi) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument(
        "generate_random_matrix: rows and cols must be >= 1");
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument(
        "generate_random_matrix: need finite lo < hi, got [" +
        std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }

  RandomMatrix m{seed, rows, cols, lo, hi, {}};
  m.entries.reserve(rows * cols);
  Xoshiro256pp rng(seed);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    m.entries.push_back(rng.next_in_range(lo, hi));
  }
  return m;
}

ToneSegment number_to_segment(double x, MoodCategory mood) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument("number_to_segment: x must lie in [0, 1)");
  }
  const std::span<const int> steps = pitch_steps(mood);
  std::size_t bucket = static_cast<std::size_t>(x * steps.size());
  if (bucket >= steps.size()) bucket = steps.size() - 1;
  const double frequency =
      base_frequency(mood) * std::exp2(steps[bucket] / 12.0);
  return {frequency, beat_seconds(mood), 1.0};
}

AudioBuffer render_mood(MoodCategory mood, const MoodSignature& signature,
                        std::uint64_t seed, double segment_seconds,
                        int sample_rate) {
  if (signature.mood != mood) {
    throw std::invalid_argument("render_mood: signature is for mood '" +
                                std::string(mood_name(signature.mood)) +
                                "', not '" + std::string(mood_name(mood)) +
                                "'");
  }
  if (sample_rate < 1) {
    throw std::invalid_argument("render_mood: sample_rate must be >= 1");
  }
  if (!(segment_seconds > 0.0) || !std::isfinite(segment_seconds)) {
    throw std::invalid_argument("render_mood: segment_seconds must be > 0");
  }
  const long long segment_samples =
      std::llround(segment_seconds * sample_rate);
  if (segment_samples < 1) {
    throw std::invalid_argument(
        "render_mood: segment rounds to zero samples");
  }

  const RandomMatrix material =
      generate_random_matrix(seed, 1, MoodSignature::kLength, 0.0, 1.0);
  const long long fade_samples = std::llround(kFadeSeconds * sample_rate);

  AudioBuffer out{sample_rate, {}};
  out.samples.reserve(MoodSignature::kLength * segment_samples);

  for (std::size_t i = 0; i < MoodSignature::kLength; ++i) {
    const ToneSegment tone = number_to_segment(material.at(0, i), mood);
    const double peak = tone.amplitude * signature.values[i];
    const double omega = 2.0 * kPi * tone.frequency / sample_rate;
    for (long long k = 0; k < segment_samples; ++k) {
      double gain = 1.0;
      if (fade_samples > 0) {
        const double fade_in = static_cast<double>(k) / fade_samples;
        const double fade_out =
            static_cast<double>(segment_samples - 1 - k) / fade_samples;
        gain = std::min({1.0, fade_in, fade_out});
      }
      out.samples.push_back(peak * gain * std::sin(omega * k));
    }
  }
  return out;
}

AudioBuffer crossfade(const AudioBuffer& a, const AudioBuffer& b,
                      std::size_t overlap_samples) {
  if (a.sample_rate != b.sample_rate) {
    throw std::invalid_argument("crossfade: sample rate mismatch (" +
                                std::to_string(a.sample_rate) + " vs " +
                                std::to_string(b.sample_rate) + ")");
  }
  if (overlap_samples > a.samples.size() ||
      overlap_samples > b.samples.size()) {
    throw std::invalid_argument(
        "crossfade: overlap exceeds an input buffer (" +
        std::to_string(overlap_samples) + " samples)");
  }

  AudioBuffer out{a.sample_rate, {}};
  out.samples.reserve(a.samples.size() + b.samples.size() - overlap_samples);
  out.samples.assign(a.samples.begin(), a.samples.end() - overlap_samples);

  // Blend ramp stays strictly inside (0, 1): the samples bordering the
  // overlap are already pure a on one side and pure b on the other.
  const std::size_t tail_start = a.samples.size() - overlap_samples;
  for (std::size_t j = 0; j < overlap_samples; ++j) {
    const double t =
        static_cast<double>(j + 1) / static_cast<double>(overlap_samples + 1);
    const double va = a.samples[tail_start + j];
    const double vb = b.samples[j];
    const double blended = va + (vb - va) * t;
    out.samples.push_back(std::clamp(blended, -1.0, 1.0));
  }

  out.samples.insert(out.samples.end(), b.samples.begin() + overlap_samples,
                     b.samples.end());
  return out;
}

}  // namespace adamus
