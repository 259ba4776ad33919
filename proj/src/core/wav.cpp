// Copyright 2026 The wgabor authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/wav.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace wgabor {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T take(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("wav: truncated file");
  return v;
}

double decode_sample(const unsigned char* p, std::uint16_t format,
                     std::uint16_t bits) {
  if (format == kFormatPcm && bits == 16) {
    std::int16_t v;
    std::memcpy(&v, p, 2);
    return v / 32768.0;
  }
  if (format == kFormatPcm && bits == 24) {
    std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
    if (v & 0x800000) v -= 0x1000000;
    return v / 8388608.0;
  }
  if (format == kFormatFloat && bits == 32) {
    float v;
    std::memcpy(&v, p, 4);
    return v;
  }
  if (format == kFormatFloat && bits == 64) {
    double v;
    std::memcpy(&v, p, 8);
    return v;
  }
  throw std::runtime_error("wav: unsupported sample format");
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("wav: cannot open '" + path + "'");

  char tag[4];
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "RIFF", 4) != 0) {
    throw std::runtime_error("wav: '" + path + "' is not a RIFF file");
  }
  take<std::uint32_t>(is);  // riff size
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "WAVE", 4) != 0) {
    throw std::runtime_error("wav: '" + path + "' is not a WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::vector<unsigned char> data;
  bool have_data = false;

  while (is.peek() != EOF) {
    is.read(tag, 4);
    if (!is) break;
    const auto size = take<std::uint32_t>(is);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = take<std::uint16_t>(is);
      channels = take<std::uint16_t>(is);
      rate = take<std::uint32_t>(is);
      take<std::uint32_t>(is);  // byte rate
      take<std::uint16_t>(is);  // block align
      bits = take<std::uint16_t>(is);
      std::uint32_t consumed = 16;
      if (format == kFormatExtensible && size >= 26) {
        take<std::uint16_t>(is);  // extension size
        take<std::uint16_t>(is);  // valid bits
        take<std::uint32_t>(is);  // channel mask
        format = take<std::uint16_t>(is);  // first two bytes of the subformat
        consumed = 26;
      }
      is.seekg(size - consumed + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data.resize(size);
      is.read(reinterpret_cast<char*>(data.data()), size);
      if (!is) throw std::runtime_error("wav: truncated data chunk");
      if (size & 1) is.seekg(1, std::ios::cur);
      have_data = true;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);
    }
  }
  if (!have_fmt || !have_data) {
    throw std::runtime_error("wav: missing fmt or data chunk in '" + path +
                             "'");
  }
  if (channels != 1 && channels != 2) {
    throw std::runtime_error("wav: only mono or stereo supported");
  }
  const std::size_t bytes_per = bits / 8;
  if (bytes_per == 0 || data.size() % (bytes_per * channels) != 0) {
    throw std::runtime_error("wav: malformed data chunk");
  }

  WavData w;
  w.sample_rate = rate;
  w.downmixed = channels == 2;
  const std::size_t frames = data.size() / (bytes_per * channels);
  w.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0;
    for (std::uint16_t ch = 0; ch < channels; ++ch) {
      acc += decode_sample(data.data() + (i * channels + ch) * bytes_per,
                           format, bits);
    }
    w.samples[i] = acc / channels;
  }
  return w;
}

void write_wav(const std::string& path, const std::vector<double>& samples,
               double sample_rate) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("wav: cannot open '" + path +
                                    "' for writing");
  const auto rate = static_cast<std::uint32_t>(sample_rate);
  const auto data_size = static_cast<std::uint32_t>(samples.size() * 4);
  auto put16 = [&](std::uint16_t v) {
    os.write(reinterpret_cast<const char*>(&v), 2);
  };
  auto put32 = [&](std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
  };
  os.write("RIFF", 4);
  put32(36 + data_size);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  put32(16);
  put16(kFormatFloat);
  put16(1);
  put32(rate);
  put32(rate * 4);
  put16(4);
  put16(32);
  os.write("data", 4);
  put32(data_size);
  for (double s : samples) {
    const auto v = static_cast<float>(s);
    os.write(reinterpret_cast<const char*>(&v), 4);
  }
  if (!os) throw std::runtime_error("wav: write failed for '" + path + "'");
}

}  // namespace wgabor
