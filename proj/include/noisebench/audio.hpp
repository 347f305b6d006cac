// Audio clips: WAV I/O, resampling, level measurement, synthetic signals.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "noisebench/common.hpp"

namespace noisebench {

// All pipelines normalize to this rate after ingestion.
inline constexpr int kCanonicalRate = 16000;

// Mono sample sequence in [-1, 1] plus its rate. Immutable by convention:
// operations take clips by const reference and return new clips.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kCanonicalRate;
  std::string source_id;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// RIFF/WAVE reader. PCM 16-bit or IEEE float 32-bit, 1 or 2 channels.
// Stereo is averaged to mono; int16 samples are scaled by 1/32768.
// Throws ParseError on a malformed container, FormatError on an
// unsupported codec or channel layout.
AudioClip read_wav(const std::string& path);

// Writes mono PCM16 (default) or IEEE float32. PCM16 samples are scaled by
// 32768 and rounded, so read_wav(write_wav(x)) round-trips PCM16 content
// bit-exactly.
void write_wav(const std::string& path, const AudioClip& clip, bool float32 = false);

// Band-limited windowed-sinc (Kaiser) resampler. Output length is
// round(len * target / source); the clip is returned unchanged when the
// rates already match.
AudioClip resample(const AudioClip& clip, int target_rate);

// 20*log10(rms). Returns -infinity for all-zero clips. Uses pairwise
// summation so concatenating a clip with itself preserves the value exactly.
double rms_db(const AudioClip& clip);

enum class SynthKind { kSine, kNoiseWhite, kPulseTrain, kFormantVoice };

struct Resonance {
  double freq_hz = 0.0;
  double bandwidth_hz = 100.0;
};

struct SynthParams {
  double frequency_hz = 440.0;   // tone frequency or pulse/voice f0
  double duration_s = 1.0;
  int sample_rate = kCanonicalRate;
  double amplitude = 0.5;
  std::vector<Resonance> formants;  // formant-voice resonators
  double tilt = 0.0;                // >0 brightens, <0 darkens (formant-voice)
  double vibrato_depth = 0.0;       // relative f0 modulation (formant-voice)
};

// Deterministic test-signal generator. Throws ParamError when the requested
// frequency is at or above Nyquist or the duration is not positive.
AudioClip synth_signal(SynthKind kind, const SynthParams& params, std::uint64_t seed);

}  // namespace noisebench
