// Framewise signal-processing primitives: spectra, cepstra, pitch,
// voice quality, rhythm. Both feature catalogs are assembled from these.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "noisebench/audio.hpp"
#include "noisebench/common.hpp"

namespace noisebench {

// Defaults shared across descriptors: 25 ms frames, 10 ms hop, Hann window.
inline constexpr double kFrameSeconds = 0.025;
inline constexpr double kHopSeconds = 0.010;
inline constexpr double kLogFloor = 1e-10;

enum class Window { kHann, kHamming };

struct Framing {
  int frame_length = 400;  // samples
  int hop = 160;           // samples
  Window window = Window::kHann;

  static Framing at_rate(int rate) {
    Framing f;
    f.frame_length = static_cast<int>(std::lround(kFrameSeconds * rate));
    f.hop = static_cast<int>(std::lround(kHopSeconds * rate));
    return f;
  }
};

// Row-major (num_frames x dim) matrix of framewise values.
struct FrameSeries {
  std::size_t num_frames = 0;
  std::size_t dim = 0;
  std::vector<double> data;
  int frame_length = 0;
  int hop = 0;
  int rate = 0;

  double& at(std::size_t f, std::size_t d) { return data[f * dim + d]; }
  double at(std::size_t f, std::size_t d) const { return data[f * dim + d]; }
  // One column as a sample vector (for functionals over frames).
  std::vector<double> column(std::size_t d) const {
    std::vector<double> out(num_frames);
    for (std::size_t f = 0; f < num_frames; ++f) out[f] = at(f, d);
    return out;
  }
};

inline std::size_t frame_count(std::size_t len, int frame_length, int hop) {
  if (len < static_cast<std::size_t>(frame_length)) return 0;
  return 1 + (len - static_cast<std::size_t>(frame_length)) / static_cast<std::size_t>(hop);
}

// Complex FFT for arbitrary sizes: radix-2 Cooley-Tukey with a Bluestein
// fallback, so spectra keep exactly frame_length/2 + 1 bins for any frame.
class Fft {
 public:
  explicit Fft(std::size_t n);
  std::size_t size() const { return n_; }
  // In-place forward transform of length-n() complex data.
  void forward(std::vector<std::complex<double>>& x) const;

 private:
  void pow2_transform(std::vector<std::complex<double>>& x, bool inverse) const;

  std::size_t n_;
  std::size_t conv_n_ = 0;  // pow2 convolution size for Bluestein (0 = radix-2 path)
  std::vector<std::complex<double>> chirp_;      // exp(-i*pi*k^2/n)
  std::vector<std::complex<double>> chirp_fft_;  // FFT of the padded chirp
};

// Magnitude spectra, one row per frame, frame_length/2 + 1 bins.
// Throws TooShortError when the clip is shorter than one frame.
FrameSeries stft(const AudioClip& clip, const Framing& framing);

// HTK-mel log filterbank energies (natural log, floored at kLogFloor).
FrameSeries log_mel(const FrameSeries& spectra, int n_mels = 26);

// MFCCs: log-mel filterbank followed by an orthonormal DCT-II, coefficients
// 0..n_coeffs-1.
FrameSeries mfcc(const AudioClip& clip, int n_coeffs = 13, int n_mels = 26);

// Least-squares local-slope deltas over a +-width window truncated at the
// series edges. Throws TooShortError for series with fewer than 2 frames.
FrameSeries deltas(const FrameSeries& series, int width = 2);

// Per-frame spectral shape, all derived from one magnitude-spectra series.
// Column order: centroid, bandwidth, rolloff85, flatness, contrast[0..5],
// zero_energy_flag.
inline constexpr std::size_t kSpectralCols = 11;
inline constexpr std::size_t kContrastBands = 6;
FrameSeries spectral_descriptors(const FrameSeries& spectra);

// Per-frame zero-crossing rate (per sample) and RMS. Columns: zcr, rms.
FrameSeries zcr_rms(const AudioClip& clip, const Framing& framing);

struct OnsetsResult {
  FrameSeries strength;             // one column: rectified log-mel flux
  std::vector<double> onset_times;  // seconds
  double tempo_bpm = 0.0;
  bool tempo_defined = false;
};

// Spectral-flux onset detector plus autocorrelation tempo in [40, 200] BPM.
// Tempo is undefined (sentinel 0) for clips shorter than one second.
OnsetsResult onsets_tempo(const AudioClip& clip);

struct PitchTrack {
  std::vector<double> f0_hz;     // 0 marks an unvoiced frame
  std::vector<double> voicing;   // peak normalized autocorrelation in [0, 1]
  int frame_length = 0;
  int hop = 0;
  int rate = 0;
  double f0_min = 60.0;
  double f0_max = 400.0;

  bool voiced(std::size_t i) const { return f0_hz[i] > 0.0; }
  std::size_t num_frames() const { return f0_hz.size(); }
};

// Normalized-autocorrelation pitch with parabolic lag interpolation.
// A frame is voiced when the peak exceeds the threshold (default 0.45).
PitchTrack pitch_track(const AudioClip& clip, double f0_min = 60.0, double f0_max = 400.0,
                       double voicing_threshold = 0.45);

struct VoiceQuality {
  double jitter_local = 0.0;       // mean |dT| / mean T over detected cycles
  double shimmer_local = 0.0;      // same over cycle peak amplitudes
  double hnr_db = 0.0;             // 10*log10(r / (1 - r)) averaged
  bool voiced_valid = false;       // enough cycles for jitter/shimmer
  std::vector<double> cycle_periods;  // seconds, consecutive cycle lengths
  std::vector<double> cycle_amps;     // per-cycle peak amplitude
  std::vector<double> hnr_track_db;   // per-frame HNR on frames used
};

// Cycle-level jitter/shimmer via waveform peak marking, HNR from the pitch
// track's normalized autocorrelation. Unvoiced material yields zero
// sentinels with voiced_valid = false; HNR then falls back to all frames.
VoiceQuality voice_quality(const AudioClip& clip, const PitchTrack& track);

struct FormantFrame {
  bool valid = false;
  double freq_hz[3] = {0.0, 0.0, 0.0};
  double bandwidth_hz[3] = {0.0, 0.0, 0.0};
};

// Autocorrelation-method LPC (Levinson-Durbin) formants on voiced frames;
// roots via Durand-Kerner. Frames with unstable polynomials are flagged
// invalid and skipped.
std::vector<FormantFrame> lpc_formants(const AudioClip& clip, const PitchTrack& track,
                                       int order = 12);

// Levinson-Durbin solve: autocorrelation r[0..order] -> predictor
// coefficients a[1..order] (returned as vector of size order, sign such that
// x[n] ~ sum a[k] x[n-k]). Returns false on a degenerate recursion.
bool levinson_durbin(const std::vector<double>& r, int order, std::vector<double>& a);

}  // namespace noisebench
