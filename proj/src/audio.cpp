#include "noisebench/audio.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace noisebench {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

// Zeroth-order modified Bessel function, power series.
double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  const double x2 = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= x2 / (k * static_cast<double>(k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::fabs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

AudioClip read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open wav file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ParseError("not a RIFF/WAVE file: " + path);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_off = 0, data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw ParseError("truncated chunk in " + path);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw ParseError("fmt chunk too small in " + path);
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = body;
      data_len = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }
  if (!have_fmt || data_off == 0) throw ParseError("missing fmt/data chunk in " + path);
  if (rate == 0) throw ParseError("zero sample rate in " + path);
  if (channels != 1 && channels != 2) {
    throw FormatError("unsupported channel count " + std::to_string(channels) + " in " + path);
  }

  const bool pcm16 = (format == 1 && bits == 16);
  const bool f32 = (format == 3 && bits == 32);
  if (!pcm16 && !f32) {
    throw FormatError("unsupported codec (format=" + std::to_string(format) +
                      ", bits=" + std::to_string(bits) + ") in " + path);
  }

  const std::size_t bytes_per = (pcm16 ? 2u : 4u) * channels;
  const std::size_t n = data_len / bytes_per;
  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.source_id = path;
  clip.samples.resize(n);
  const unsigned char* d = bytes.data() + data_off;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, d + i * bytes_per + 2u * static_cast<unsigned>(c), 2);
        acc += static_cast<double>(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, d + i * bytes_per + 4u * static_cast<unsigned>(c), 4);
        if (!std::isfinite(v)) throw ParseError("non-finite sample in " + path);
        acc += clamp_unit(static_cast<double>(v));
      }
    }
    clip.samples[i] = acc / channels;
  }
  if (clip.samples.empty()) throw ParseError("empty data chunk in " + path);
  return clip;
}

void write_wav(const std::string& path, const AudioClip& clip, bool float32) {
  const std::uint16_t channels = 1;
  const std::uint16_t bits = float32 ? 32 : 16;
  const std::uint32_t byte_rate =
      static_cast<std::uint32_t>(clip.sample_rate) * channels * bits / 8;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(clip.samples.size()) * bits / 8;

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, float32 ? 3 : 1);
  put_u16(out, channels);
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put_u32(out, byte_rate);
  put_u16(out, static_cast<std::uint16_t>(channels * bits / 8));
  put_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);

  for (double s : clip.samples) {
    if (float32) {
      const float v = static_cast<float>(clamp_unit(s));
      unsigned char b[4];
      std::memcpy(b, &v, 4);
      out.insert(out.end(), b, b + 4);
    } else {
      long r = std::lround(clamp_unit(s) * 32768.0);
      r = std::clamp(r, -32768l, 32767l);
      const auto v = static_cast<std::int16_t>(r);
      unsigned char b[2];
      std::memcpy(b, &v, 2);
      out.insert(out.end(), b, b + 2);
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write wav file: " + path);
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

AudioClip resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0) throw ParamError("target rate must be positive");
  if (target_rate == clip.sample_rate) return clip;

  const double ratio = static_cast<double>(target_rate) / clip.sample_rate;
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(clip.samples.size()) * ratio));

  // Cutoff at the smaller Nyquist with a little rolloff headroom; the kernel
  // stretches by 1/ratio when downsampling.
  const double fc = 0.5 * std::min(1.0, ratio) * 0.95;
  const double half_width = 24.0 * std::max(1.0, 1.0 / ratio);
  const auto half = static_cast<long>(std::ceil(half_width));
  const double beta = 9.0;
  const double i0_beta = bessel_i0(beta);
  const auto n_in = static_cast<long>(clip.samples.size());

  AudioClip out;
  out.sample_rate = target_rate;
  out.source_id = clip.source_id;
  out.samples.resize(out_len);

  for (std::size_t j = 0; j < out_len; ++j) {
    const double t = static_cast<double>(j) / ratio;
    const long lo = std::max(0l, static_cast<long>(std::ceil(t - half_width)));
    const long hi = std::min(n_in - 1, static_cast<long>(std::floor(t + half_width)));
    double acc = 0.0, wsum = 0.0;
    for (long n = lo; n <= hi; ++n) {
      const double tau = static_cast<double>(n) - t;
      const double u = tau / static_cast<double>(half);
      const double win = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - u * u))) / i0_beta;
      const double w = 2.0 * fc * sinc(2.0 * fc * tau) * win;
      acc += clip.samples[static_cast<std::size_t>(n)] * w;
      wsum += w;
    }
    out.samples[j] = (wsum > 1e-12) ? clamp_unit(acc / wsum) : 0.0;
  }
  return out;
}

double rms_db(const AudioClip& clip) {
  if (clip.samples.empty()) throw ParamError("rms_db on empty clip");
  const double energy = pairwise_sum(clip.samples, [](double x) { return x * x; });
  if (energy == 0.0) return -std::numeric_limits<double>::infinity();
  const double mean_sq = energy / static_cast<double>(clip.samples.size());
  return 20.0 * std::log10(std::sqrt(mean_sq));
}

AudioClip synth_signal(SynthKind kind, const SynthParams& p, std::uint64_t seed) {
  if (p.duration_s <= 0.0) throw ParamError("duration must be positive");
  if (p.sample_rate <= 0) throw ParamError("sample rate must be positive");
  const double nyquist = p.sample_rate / 2.0;
  if ((kind == SynthKind::kSine || kind == SynthKind::kPulseTrain ||
       kind == SynthKind::kFormantVoice) &&
      p.frequency_hz >= nyquist) {
    throw ParamError("frequency must be below Nyquist");
  }

  const auto n = static_cast<std::size_t>(std::llround(p.duration_s * p.sample_rate));
  AudioClip clip;
  clip.sample_rate = p.sample_rate;
  clip.samples.assign(n, 0.0);
  Rng rng(seed);

  switch (kind) {
    case SynthKind::kSine: {
      clip.source_id = "synth:sine";
      const double w = 2.0 * M_PI * p.frequency_hz / p.sample_rate;
      for (std::size_t i = 0; i < n; ++i) {
        clip.samples[i] = p.amplitude * std::sin(w * static_cast<double>(i));
      }
      break;
    }
    case SynthKind::kNoiseWhite: {
      clip.source_id = "synth:noise-white";
      for (std::size_t i = 0; i < n; ++i) {
        clip.samples[i] = p.amplitude * (2.0 * rng.uniform01() - 1.0);
      }
      break;
    }
    case SynthKind::kPulseTrain: {
      clip.source_id = "synth:pulse-train";
      const double period = p.sample_rate / p.frequency_hz;
      for (double t = 0.0; t < static_cast<double>(n); t += period) {
        clip.samples[static_cast<std::size_t>(std::llround(t))] = p.amplitude;
      }
      break;
    }
    case SynthKind::kFormantVoice: {
      clip.source_id = "synth:formant-voice";
      // Glottal-ish excitation: impulse train with optional slow vibrato.
      std::vector<double> x(n, 0.0);
      double t = 0.0;
      double phase = rng.uniform(0.0, 2.0 * M_PI);
      while (t < static_cast<double>(n)) {
        const auto idx = static_cast<std::size_t>(std::llround(t));
        if (idx < n) x[idx] = 1.0;
        const double mod =
            1.0 + p.vibrato_depth * std::sin(phase + 2.0 * M_PI * 5.0 * t / p.sample_rate);
        t += p.sample_rate / (p.frequency_hz * mod);
      }
      // Cascade of two-pole resonators.
      std::vector<Resonance> resonances = p.formants;
      if (resonances.empty()) {
        resonances = {{700.0, 110.0}, {1220.0, 120.0}, {2600.0, 160.0}};
      }
      for (const Resonance& rsn : resonances) {
        const double r = std::exp(-M_PI * rsn.bandwidth_hz / p.sample_rate);
        const double theta = 2.0 * M_PI * rsn.freq_hz / p.sample_rate;
        const double a1 = 2.0 * r * std::cos(theta);
        const double a2 = -r * r;
        const double g = 1.0 - 2.0 * r * std::cos(theta) + r * r;  // unity gain at resonance-ish
        double y1 = 0.0, y2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double y = g * x[i] + a1 * y1 + a2 * y2;
          y2 = y1;
          y1 = y;
          x[i] = y;
        }
      }
      // Spectral tilt: positive lifts highs (first difference blend),
      // negative lifts lows (one-pole smoothing blend).
      if (p.tilt > 0.0) {
        double prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double cur = x[i];
          x[i] = cur - p.tilt * 0.9 * prev;
          prev = cur;
        }
      } else if (p.tilt < 0.0) {
        const double a = -p.tilt * 0.9;
        double state = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          state = (1.0 - a) * x[i] + a * state;
          x[i] = state;
        }
      }
      double peak = 0.0;
      for (double v : x) peak = std::max(peak, std::fabs(v));
      const double g = peak > 0.0 ? p.amplitude / peak : 0.0;
      for (std::size_t i = 0; i < n; ++i) clip.samples[i] = g * x[i];
      break;
    }
  }
  return clip;
}

}  // namespace noisebench
