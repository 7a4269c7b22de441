// core/src/audio.cpp

// Copyright 2026  The mmclap Authors

// See ../../COPYING for clarification regarding multiple authors
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

#include "mmclap/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mmclap/archive.hpp"
#include "mmclap/error.hpp"

namespace mmclap {

namespace {

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T get(const std::string& data, std::size_t pos) {
  if (pos + sizeof(T) > data.size()) throw ParseError(0, "WAV file truncated");
  T value;
  std::memcpy(&value, data.data() + pos, sizeof(T));
  return value;
}

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open audio '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  if (data.size() < 12 || data.compare(0, 4, "RIFF") != 0 || data.compare(8, 4, "WAVE") != 0)
    throw ParseError(0, path.string() + ": not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const std::string id = data.substr(pos, 4);
    const auto size = get<std::uint32_t>(data, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      format = get<std::uint16_t>(data, body);
      channels = get<std::uint16_t>(data, body + 2);
      rate = get<std::uint32_t>(data, body + 4);
      bits = get<std::uint16_t>(data, body + 14);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw ParseError(0, path.string() + ": data chunk before fmt chunk");
      if (channels != 1) throw Error(path.string() + ": expected mono audio");
      if (rate != static_cast<std::uint32_t>(kSampleRate))
        throw Error(path.string() + ": expected 16 kHz audio, got " + std::to_string(rate) + " Hz");
      const std::size_t end = std::min<std::size_t>(data.size(), body + size);
      Waveform out;
      if (format == 1 && bits == 16) {
        for (std::size_t p = body; p + 2 <= end; p += 2)
          out.push_back(static_cast<float>(get<std::int16_t>(data, p)) / 32768.0f);
      } else if (format == 3 && bits == 32) {
        for (std::size_t p = body; p + 4 <= end; p += 4) out.push_back(get<float>(data, p));
      } else {
        throw Error(path.string() + ": unsupported sample format");
      }
      return out;
    }
    pos = body + size + (size & 1u);
  }
  throw ParseError(0, path.string() + ": no data chunk");
}

void write_wav(const std::filesystem::path& path, std::span<const float> samples) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out = "RIFF";
  put<std::uint32_t>(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put<std::uint32_t>(out, 16);
  put<std::uint16_t>(out, 1);
  put<std::uint16_t>(out, 1);
  put<std::uint32_t>(out, kSampleRate);
  put<std::uint32_t>(out, kSampleRate * 2);
  put<std::uint16_t>(out, 2);
  put<std::uint16_t>(out, 16);
  out += "data";
  put<std::uint32_t>(out, data_bytes);
  for (float s : samples) {
    const float clipped = std::clamp(s, -1.0f, 1.0f);
    put<std::int16_t>(out, static_cast<std::int16_t>(std::lround(clipped * 32767.0f)));
  }
  write_file_atomic(path, out);
}

Waveform load_audio(const AudioRef& ref, const std::filesystem::path& base_dir) {
  if (ref.is_inline()) return ref.samples;
  std::filesystem::path p(ref.path);
  if (p.is_relative()) p = base_dir / p;
  return read_wav(p);
}

}  // namespace mmclap
