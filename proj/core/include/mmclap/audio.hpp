// core/include/mmclap/audio.hpp

// Copyright 2026  The mmclap Authors

// See ../../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "mmclap/records.hpp"

namespace mmclap {

inline constexpr int kSampleRate = 16000;

using Waveform = std::vector<float>;

/// Reads a mono 16 kHz WAV file (16-bit PCM or 32-bit float).
Waveform read_wav(const std::filesystem::path& path);

/// Writes mono 16 kHz 16-bit PCM; samples are clipped to [-1, 1].
void write_wav(const std::filesystem::path& path, std::span<const float> samples);

Waveform load_audio(const AudioRef& ref, const std::filesystem::path& base_dir);

}  // namespace mmclap
