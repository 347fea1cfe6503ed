// Copyright 2026 The SpecDiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specdiff/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;

uint32_t ReadU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void AppendU32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

void AppendU16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void AppendTag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

Waveform ReadWav(const std::string& path, int expected_sample_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open WAV file: " + path);
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file: " + path);
  }

  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
  bool have_fmt = false;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    const uint32_t chunk_size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw FormatError("truncated chunk in WAV file: " + path);
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw FormatError("short fmt chunk in WAV file: " + path);
      }
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      sample_rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw FormatError("missing fmt/data chunk in WAV file: " + path);
  }
  if (channels != 1) {
    throw FormatError("unsupported-format: expected mono, got " +
                      std::to_string(channels) + " channels");
  }
  if (sample_rate != static_cast<uint32_t>(expected_sample_rate)) {
    throw FormatError("unsupported-format: expected " +
                      std::to_string(expected_sample_rate) + " Hz, got " +
                      std::to_string(sample_rate) + " Hz");
  }

  Waveform samples;
  if (format == kFormatPcm && bits == 16) {
    samples.resize(data_size / 2);
    for (size_t i = 0; i < samples.size(); ++i) {
      const int16_t v =
          static_cast<int16_t>(ReadU16(data + 2 * i));
      samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    samples.resize(data_size / 4);
    for (size_t i = 0; i < samples.size(); ++i) {
      const uint32_t raw = ReadU32(data + 4 * i);
      float f;
      std::memcpy(&f, &raw, sizeof(f));
      samples[i] = static_cast<double>(f);
    }
  } else {
    throw FormatError("unsupported-format: need PCM16 or float32, got format " +
                      std::to_string(format) + " with " + std::to_string(bits) +
                      " bits");
  }
  return samples;
}

void WriteWav(const std::string& path, const Waveform& samples,
              int sample_rate, WavSampleFormat format) {
  const bool is_float = format == WavSampleFormat::kFloat32;
  const uint16_t bits = is_float ? 32 : 16;
  const uint16_t bytes_per_sample = bits / 8;
  const uint32_t data_size =
      static_cast<uint32_t>(samples.size()) * bytes_per_sample;

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  AppendTag(out, "RIFF");
  AppendU32(out, 36 + data_size);
  AppendTag(out, "WAVE");
  AppendTag(out, "fmt ");
  AppendU32(out, 16);
  AppendU16(out, is_float ? kFormatFloat : kFormatPcm);
  AppendU16(out, 1);  // mono
  AppendU32(out, static_cast<uint32_t>(sample_rate));
  AppendU32(out, static_cast<uint32_t>(sample_rate) * bytes_per_sample);
  AppendU16(out, bytes_per_sample);
  AppendU16(out, bits);
  AppendTag(out, "data");
  AppendU32(out, data_size);

  if (is_float) {
    for (double s : samples) {
      const float f = static_cast<float>(s);
      uint32_t raw;
      std::memcpy(&raw, &f, sizeof(raw));
      AppendU32(out, raw);
    }
  } else {
    for (double s : samples) {
      const double scaled = std::round(s * 32768.0);
      const double clamped = std::clamp(scaled, -32768.0, 32767.0);
      AppendU16(out, static_cast<uint16_t>(static_cast<int16_t>(clamped)));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw FormatError("cannot open for writing: " + path);
  }
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw FormatError("failed to write WAV file: " + path);
  }
}

}  // namespace specdiff
