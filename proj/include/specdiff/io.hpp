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

#ifndef SPECDIFF_IO_HPP_
#define SPECDIFF_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "specdiff/envelope.hpp"
#include "specdiff/mel.hpp"

namespace specdiff {

// Binary mel tensor: magic "SGMEL1", then F and K as unsigned 32-bit
// little-endian, then K*F little-endian float32 values frame-major.
// File size is exactly 14 + 4*F*K bytes.
void WriteMelFile(const std::string& path, const LogMelSpectrogram& c);
LogMelSpectrogram ReadMelFile(const std::string& path);

// Per-frame filter magnitudes as CSV, one row per bin, one column per frame
// (plus a leading bin-index column and a header row). Values are float32
// printed with shortest round-trip decimals.
void WriteFilterMagnitudesCsv(const std::string& path, const FilterSpec& spec);

// Parses the CSV back into bins x frames float values (header skipped).
std::vector<std::vector<float>> ReadFilterMagnitudesCsv(
    const std::string& path);

// One beta per line, for user-supplied inference schedules.
std::vector<double> ReadBetaFile(const std::string& path);

// Everything a run needs, serialized as flat key=value text. Defaults follow
// the 24 kHz / 50 ms / 12.5 ms / 2048-FFT / 128-mel configuration.
struct RunConfig {
  MelConfig mel;
  EnvelopeConfig envelope;
  std::string schedule = "WG-50";
  std::string prior = "envelope";
  uint64_t seed = 0;
};

void SaveRunConfig(const std::string& path, const RunConfig& config);
RunConfig LoadRunConfig(const std::string& path);

}  // namespace specdiff

#endif  // SPECDIFF_IO_HPP_
