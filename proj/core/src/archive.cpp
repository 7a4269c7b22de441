// core/src/archive.cpp

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

#include "mmclap/archive.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mmclap/error.hpp"

namespace mmclap {

namespace {

constexpr std::array<char, 8> kMagic{'M', 'M', 'C', 'L', 'A', 'P', 'C', 'K'};

static_assert(std::endian::native == std::endian::little,
              "archive encoding assumes a little-endian host");

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw ParseError(0, "archive truncated");
  T value;
  std::memcpy(&value, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

}  // namespace

const Eigen::MatrixXd& TensorArchive::tensor(const std::string& name) const {
  for (const auto& [n, t] : tensors)
    if (n == name) return t;
  throw Error("archive has no tensor '" + name + "'");
}

bool TensorArchive::has(const std::string& name) const noexcept {
  for (const auto& entry : tensors)
    if (entry.first == name) return true;
  return false;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_archive(const std::filesystem::path& path, const TensorArchive& archive) {
  nlohmann::json header = archive.header;
  nlohmann::json index = nlohmann::json::array();
  for (const auto& [name, t] : archive.tensors)
    index.push_back({{"name", name}, {"rows", t.rows()}, {"cols", t.cols()}});
  header["tensors"] = index;
  const std::string header_text = header.dump();

  std::string out(kMagic.begin(), kMagic.end());
  put<std::uint32_t>(out, TensorArchive::kVersion);
  put<std::uint64_t>(out, header_text.size());
  out += header_text;
  for (const auto& entry : archive.tensors) {
    const auto& t = entry.second;
    out.append(reinterpret_cast<const char*>(t.data()),
               static_cast<std::size_t>(t.size()) * sizeof(double));
  }
  write_file_atomic(path, out);
}

TensorArchive read_archive(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open archive '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string data = buffer.str();

  if (data.size() < kMagic.size() || std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0)
    throw ParseError(0, path.string() + ": not an mmclap archive");
  std::size_t pos = kMagic.size();
  const auto version = take<std::uint32_t>(data, pos);
  if (version != TensorArchive::kVersion)
    throw ParseError(0, path.string() + ": unsupported archive version " + std::to_string(version));
  const auto header_len = take<std::uint64_t>(data, pos);
  if (pos + header_len > data.size()) throw ParseError(0, "archive header truncated");

  TensorArchive archive;
  archive.header = nlohmann::json::parse(data.substr(pos, header_len));
  pos += header_len;
  for (const auto& entry : archive.header.at("tensors")) {
    const auto rows = entry.at("rows").get<Eigen::Index>();
    const auto cols = entry.at("cols").get<Eigen::Index>();
    Eigen::MatrixXd t(rows, cols);
    const std::size_t bytes = static_cast<std::size_t>(rows * cols) * sizeof(double);
    if (pos + bytes > data.size()) throw ParseError(0, "archive tensor data truncated");
    std::memcpy(t.data(), data.data() + pos, bytes);
    pos += bytes;
    archive.tensors.emplace_back(entry.at("name").get<std::string>(), std::move(t));
  }
  archive.header.erase("tensors");
  return archive;
}

}  // namespace mmclap
