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

#ifndef SPECDIFF_WAV_HPP_
#define SPECDIFF_WAV_HPP_

#include <string>

#include "specdiff/stft.hpp"

namespace specdiff {

enum class WavSampleFormat { kPcm16, kFloat32 };

// RIFF/WAVE reader for mono PCM16 or float32 files. The sample rate must
// equal expected_sample_rate — there is no resampling, a mismatch is a
// FormatError. PCM16 samples map to [-1, 1) by division by 32768.
Waveform ReadWav(const std::string& path, int expected_sample_rate);

// Writes a mono WAV file. Float32 output round-trips bit-exactly through
// ReadWav (up to the double -> float cast); PCM16 quantizes with clamping.
void WriteWav(const std::string& path, const Waveform& samples,
              int sample_rate,
              WavSampleFormat format = WavSampleFormat::kFloat32);

}  // namespace specdiff

#endif  // SPECDIFF_WAV_HPP_
