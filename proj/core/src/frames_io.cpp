// Copyright 2026 The stgabor Authors.
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

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>

#include "stgabor/error.hpp"
#include "stgabor/io.hpp"

namespace stgabor {
namespace {

namespace fs = std::filesystem;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_image_extension(const fs::path& p) {
  const auto ext = lower(p.extension().string());
  return ext == ".pgm" || ext == ".ppm" || ext == ".png";
}

// Netpbm header and payload reader. Supports P2, P3, P5 and P6.
class NetpbmReader {
 public:
  NetpbmReader(std::vector<unsigned char> bytes, std::string name)
      : bytes_(std::move(bytes)), name_(std::move(name)) {}

  GrayImage decode() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') fail("not a netpbm file");
    const char kind = static_cast<char>(bytes_[1]);
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
      fail(std::string("unsupported netpbm type P") + kind);
    }
    pos_ = 2;
    GrayImage img;
    img.width = next_number();
    img.height = next_number();
    const std::size_t max_value = next_number();
    if (img.width == 0 || img.height == 0) fail("zero image dimension");
    if (max_value == 0 || max_value > 65535) fail("maxval out of range");
    const bool color = kind == '3' || kind == '6';
    const bool binary = kind == '5' || kind == '6';
    const std::size_t channels = color ? 3 : 1;
    const std::size_t samples = img.width * img.height * channels;

    std::vector<unsigned> raw(samples);
    if (binary) {
      ++pos_;  // single whitespace after maxval
      const std::size_t bytes_per = max_value > 255 ? 2 : 1;
      if (bytes_.size() < pos_ + samples * bytes_per) fail("truncated pixel data");
      for (std::size_t i = 0; i < samples; ++i) {
        raw[i] = bytes_per == 1
                     ? bytes_[pos_ + i]
                     : (static_cast<unsigned>(bytes_[pos_ + 2 * i]) << 8) |
                           bytes_[pos_ + 2 * i + 1];
      }
    } else {
      for (auto& v : raw) v = static_cast<unsigned>(next_number());
    }
    img.pixels.resize(img.width * img.height);
    const auto m = static_cast<unsigned>(max_value);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      if (color) {
        img.pixels[i] = luma(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2], m);
      } else {
        if (raw[i] > m) fail("sample exceeds maxval");
        img.pixels[i] = static_cast<double>(raw[i]) / static_cast<double>(m);
      }
    }
    return img;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(name_ + ": " + what);
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t next_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      fail("expected a number in header or ASCII payload");
    }
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (1u << 30)) fail("number out of range");
      ++pos_;
    }
    return value;
  }

  std::vector<unsigned char> bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

GrayImage read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  const std::string name = path.string();
  if (png_image_begin_read_from_file(&image, name.c_str()) == 0) {
    throw FormatError(name + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw FormatError(name + ": " + message);
  }
  GrayImage img;
  img.width = image.width;
  img.height = image.height;
  img.pixels.resize(img.width * img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = color ? luma(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2])
                          : static_cast<double>(buffer[i]) / 255.0;
  }
  return img;
}

Volume stack(const std::vector<GrayImage>& frames,
             const std::vector<std::string>& names) {
  const std::size_t w = frames.front().width;
  const std::size_t h = frames.front().height;
  Volume video({w, h, frames.size()});
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].width != w || frames[t].height != h) {
      throw InconsistentFrames(names[t] + " is " + std::to_string(frames[t].width) +
                               "x" + std::to_string(frames[t].height) +
                               " but the first frame is " + std::to_string(w) +
                               "x" + std::to_string(h));
    }
    std::copy(frames[t].pixels.begin(), frames[t].pixels.end(),
              video.data().begin() + static_cast<std::ptrdiff_t>(t * w * h));
  }
  return video;
}

// Renders a pattern containing exactly one %d conversion (optionally with
// zero-padded width) without handing user text to printf.
std::string format_frame_name(const std::string& pattern, long index) {
  static const std::regex kConversion("%(0?)([0-9]*)d");
  std::smatch m;
  if (std::count(pattern.begin(), pattern.end(), '%') != 1 ||
      !std::regex_search(pattern, m, kConversion)) {
    throw InvalidParameter("frame pattern needs exactly one %d conversion: " +
                           pattern);
  }
  const std::string rest = m.suffix().str();
  std::string digits = std::to_string(index < 0 ? -index : index);
  const std::size_t width = m[2].length() ? std::stoul(m[2].str()) : 0;
  const char fill = m[1].length() ? '0' : ' ';
  const std::size_t sign = index < 0 ? 1 : 0;
  if (digits.size() + sign < width) {
    digits.insert(0, width - digits.size() - sign, fill);
  }
  if (index < 0) digits.insert(0, "-");
  return m.prefix().str() + digits + rest;
}

}  // namespace

double luma(unsigned r, unsigned g, unsigned b, unsigned max_value) {
  // Integer weights keep white at exactly 1.0.
  const double weighted = 299.0 * r + 587.0 * g + 114.0 * b;
  return std::clamp(weighted / (1000.0 * max_value), 0.0, 1.0);
}

GrayImage read_image(const fs::path& path) {
  const auto ext = lower(path.extension().string());
  if (ext == ".png") return read_png(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return NetpbmReader(std::move(bytes), path.string()).decode();
}

void write_pgm(const fs::path& path, std::span<const double> pixels,
               std::size_t width, std::size_t height, unsigned max_value) {
  if (max_value != 255 && max_value != 65535) {
    throw InvalidParameter("PGM max value must be 255 or 65535");
  }
  if (pixels.size() != width * height) {
    throw InvalidInput("pixel count does not match image size");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "P5\n" << width << ' ' << height << '\n' << max_value << '\n';
  for (double v : pixels) {
    const auto q = static_cast<unsigned>(
        std::lround(std::clamp(v, 0.0, 1.0) * static_cast<double>(max_value)));
    if (max_value > 255) out.put(static_cast<char>(q >> 8));
    out.put(static_cast<char>(q & 0xffu));
  }
  if (!out) throw Error("failed writing " + path.string());
}

Volume load_video(const FrameSequenceSource& source) {
  std::vector<GrayImage> frames;
  std::vector<std::string> names;
  for (long i = source.first_index;; ++i) {
    const std::size_t n = frames.size();
    if (source.frame_count != 0 && n == source.frame_count) break;
    const fs::path file = source.directory / format_frame_name(source.pattern, i);
    if (!fs::exists(file)) {
      if (source.frame_count == 0 && n > 0) break;
      throw FrameGapError("missing frame " + std::to_string(i) + " (" +
                              file.string() + ")",
                          i);
    }
    frames.push_back(read_image(file));
    names.push_back(file.string());
  }
  return stack(frames, names);
}

Volume load_frame_directory(const fs::path& directory) {
  if (!fs::is_directory(directory)) {
    throw InvalidInput(directory.string() + " is not a directory");
  }
  static const std::regex kLastDigits("([0-9]+)[^0-9]*$");
  std::map<long, fs::path> indexed;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file() || !is_image_extension(entry.path())) continue;
    const std::string stem = entry.path().stem().string();
    std::smatch m;
    if (!std::regex_search(stem, m, kLastDigits)) {
      throw InvalidInput(entry.path().string() + " has no frame number");
    }
    const long index = std::stol(m[1].str());
    if (!indexed.emplace(index, entry.path()).second) {
      throw InvalidInput("frame number " + std::to_string(index) +
                         " appears twice in " + directory.string());
    }
  }
  if (indexed.empty()) {
    throw InvalidInput("no .pgm/.ppm/.png frames in " + directory.string());
  }
  std::vector<GrayImage> frames;
  std::vector<std::string> names;
  long expected = indexed.begin()->first;
  for (const auto& [index, file] : indexed) {
    if (index != expected) {
      throw FrameGapError("missing frame " + std::to_string(expected) + " in " +
                              directory.string(),
                          expected);
    }
    frames.push_back(read_image(file));
    names.push_back(file.string());
    ++expected;
  }
  return stack(frames, names);
}

Volume crop(const Volume& volume, const VideoCrop& r) {
  if (r.is_identity()) return volume;
  const std::size_t w = r.width ? r.width : volume.width() - std::min(r.x, volume.width());
  const std::size_t h = r.height ? r.height : volume.height() - std::min(r.y, volume.height());
  const std::size_t f = r.frames ? r.frames : volume.frames() - std::min(r.t, volume.frames());
  if (w == 0 || h == 0 || f == 0 || r.x + w > volume.width() ||
      r.y + h > volume.height() || r.t + f > volume.frames()) {
    throw InvalidParameter("crop region lies outside the " +
                           std::to_string(volume.width()) + "x" +
                           std::to_string(volume.height()) + "x" +
                           std::to_string(volume.frames()) + " volume");
  }
  Volume out({w, h, f});
  for (std::size_t t = 0; t < f; ++t) {
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        out.at(x, y, t) = volume.at(r.x + x, r.y + y, r.t + t);
      }
    }
  }
  return out;
}

Volume load_video_path(const fs::path& path, const VideoCrop& region) {
  Volume video;
  if (fs::is_directory(path)) {
    video = load_frame_directory(path);
  } else if (lower(path.extension().string()) == ".stv") {
    video = load_volume(path);
  } else {
    const GrayImage img = read_image(path);
    video = Volume({img.width, img.height, 1}, img.pixels);
  }
  return crop(video, region);
}

}  // namespace stgabor
