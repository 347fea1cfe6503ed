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

#include "specdiff/io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

constexpr char kMelMagic[6] = {'S', 'G', 'M', 'E', 'L', '1'};

void AppendU32(std::string& out, uint32_t v) {
  out.push_back(static_cast<char>(v));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 24));
}

uint32_t ParseU32(const char* p) {
  const auto* u = reinterpret_cast<const unsigned char*>(p);
  return static_cast<uint32_t>(u[0]) | (static_cast<uint32_t>(u[1]) << 8) |
         (static_cast<uint32_t>(u[2]) << 16) |
         (static_cast<uint32_t>(u[3]) << 24);
}

std::string ShortestFloat(float v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

float ParseFloat(const std::string& field, const std::string& path) {
  float v = 0.0f;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw FormatError("bad float '" + field + "' in " + path);
  }
  return v;
}

std::string ReadWholeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteWholeFile(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError("cannot open for writing: " + path);
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw FormatError("failed to write file: " + path);
  }
}

}  // namespace

void WriteMelFile(const std::string& path, const LogMelSpectrogram& c) {
  if (c.num_frames < 1 || c.num_mels < 1) {
    throw InvalidArgumentError("WriteMelFile: empty mel spectrogram");
  }
  std::string out;
  out.reserve(14 + 4 * static_cast<size_t>(c.num_frames) * c.num_mels);
  out.append(kMelMagic, sizeof(kMelMagic));
  AppendU32(out, static_cast<uint32_t>(c.num_mels));
  AppendU32(out, static_cast<uint32_t>(c.num_frames));
  for (int64_t k = 0; k < c.num_frames; ++k) {
    for (int f = 0; f < c.num_mels; ++f) {
      const float v = static_cast<float>(c.coefficients(k, f));
      uint32_t raw;
      std::memcpy(&raw, &v, sizeof(raw));
      AppendU32(out, raw);
    }
  }
  WriteWholeFile(path, out);
}

LogMelSpectrogram ReadMelFile(const std::string& path) {
  const std::string bytes = ReadWholeFile(path);
  if (bytes.size() < 14 || std::memcmp(bytes.data(), kMelMagic, 6) != 0) {
    throw FormatError("not a SGMEL1 file: " + path);
  }
  const uint32_t num_mels = ParseU32(bytes.data() + 6);
  const uint32_t num_frames = ParseU32(bytes.data() + 10);
  if (num_mels < 1 || num_frames < 1) {
    throw FormatError("SGMEL1 dimensions must be >= 1: " + path);
  }
  const size_t expected =
      14 + 4 * static_cast<size_t>(num_mels) * static_cast<size_t>(num_frames);
  if (bytes.size() != expected) {
    throw FormatError("SGMEL1 size mismatch in " + path + ": expected " +
                      std::to_string(expected) + " bytes, got " +
                      std::to_string(bytes.size()));
  }

  LogMelSpectrogram c;
  c.num_frames = num_frames;
  c.num_mels = static_cast<int>(num_mels);
  c.coefficients.resize(num_frames, num_mels);
  const char* p = bytes.data() + 14;
  for (uint32_t k = 0; k < num_frames; ++k) {
    for (uint32_t f = 0; f < num_mels; ++f) {
      const uint32_t raw = ParseU32(p);
      p += 4;
      float v;
      std::memcpy(&v, &raw, sizeof(v));
      c.coefficients(k, f) = static_cast<double>(v);
    }
  }
  return c;
}

void WriteFilterMagnitudesCsv(const std::string& path, const FilterSpec& spec) {
  const ComplexSpectrogram& r = spec.responses;
  if (r.num_frames < 1 || r.num_bins < 1) {
    throw InvalidArgumentError("WriteFilterMagnitudesCsv: empty filter");
  }
  std::string out;
  out += "bin";
  for (int64_t k = 0; k < r.num_frames; ++k) {
    out += ",frame" + std::to_string(k);
  }
  out += "\n";
  for (int b = 0; b < r.num_bins; ++b) {
    out += std::to_string(b);
    for (int64_t k = 0; k < r.num_frames; ++k) {
      out += ',';
      out += ShortestFloat(static_cast<float>(std::abs(r.at(k, b))));
    }
    out += "\n";
  }
  WriteWholeFile(path, out);
}

std::vector<std::vector<float>> ReadFilterMagnitudesCsv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open CSV: " + path);
  }
  std::vector<std::vector<float>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<float> row;
    std::stringstream ss(line);
    std::string field;
    bool first = true;
    while (std::getline(ss, field, ',')) {
      if (first) {
        first = false;  // bin index column
        continue;
      }
      row.push_back(ParseFloat(field, path));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> ReadBetaFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open schedule file: " + path);
  }
  std::vector<double> betas;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      size_t used = 0;
      const double v = std::stod(line, &used);
      if (used != line.size()) {
        throw FormatError("bad beta line '" + line + "' in " + path);
      }
      betas.push_back(v);
    } catch (const std::logic_error&) {
      throw FormatError("bad beta line '" + line + "' in " + path);
    }
  }
  if (betas.empty()) {
    throw FormatError("schedule file has no betas: " + path);
  }
  return betas;
}

void SaveRunConfig(const std::string& path, const RunConfig& config) {
  char buf[64];
  std::string out;
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key + "=" + value + "\n";
  };
  auto fmt = [&buf](double v) {
    snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  put("window_length", std::to_string(config.mel.stft.window_length));
  put("hop", std::to_string(config.mel.stft.hop));
  put("fft_size", std::to_string(config.mel.stft.fft_size));
  put("sample_rate", std::to_string(config.mel.stft.sample_rate));
  put("n_mels", std::to_string(config.mel.num_mels));
  put("f_min", fmt(config.mel.f_min));
  put("f_max", fmt(config.mel.f_max));
  put("lifter_order", std::to_string(config.envelope.lifter_order));
  put("stabilizer", fmt(config.envelope.stabilizer));
  put("schedule", config.schedule);
  put("prior", config.prior);
  put("seed", std::to_string(config.seed));
  WriteWholeFile(path, out);
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open config: " + path);
  }
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(line_no) +
                        " is not key=value in " + path);
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "window_length") {
        config.mel.stft.window_length = std::stoi(value);
      } else if (key == "hop") {
        config.mel.stft.hop = std::stoi(value);
      } else if (key == "fft_size") {
        config.mel.stft.fft_size = std::stoi(value);
      } else if (key == "sample_rate") {
        config.mel.stft.sample_rate = std::stoi(value);
      } else if (key == "n_mels") {
        config.mel.num_mels = std::stoi(value);
      } else if (key == "f_min") {
        config.mel.f_min = std::stod(value);
      } else if (key == "f_max") {
        config.mel.f_max = std::stod(value);
      } else if (key == "lifter_order") {
        config.envelope.lifter_order = std::stoi(value);
      } else if (key == "stabilizer") {
        config.envelope.stabilizer = std::stod(value);
      } else if (key == "schedule") {
        config.schedule = value;
      } else if (key == "prior") {
        config.prior = value;
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else {
        throw FormatError("unknown config key '" + key + "' in " + path);
      }
    } catch (const std::logic_error&) {
      throw FormatError("bad value for '" + key + "' in " + path);
    }
  }
  return config;
}

}  // namespace specdiff
