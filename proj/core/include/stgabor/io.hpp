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

#ifndef STGABOR_IO_HPP_
#define STGABOR_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stgabor/volume.hpp"

namespace stgabor {

// ---------------------------------------------------------------------------
// Native volume format (".stv"), little-endian:
//
//   offset  size  field
//        0     8  magic "STGVOL01"
//        8     1  byte-order flag, 1 = little-endian (the only value written)
//        9     3  reserved, zero
//       12    12  width, height, frames as uint32
//       24    24  origin x, y, t as int64
//       48  8*N  float64 samples, x fastest, N = width * height * frames
//
// Round trips are bit-exact.
// ---------------------------------------------------------------------------
inline constexpr char kVolumeMagic[8] = {'S', 'T', 'G', 'V', 'O', 'L', '0', '1'};
inline constexpr std::size_t kVolumeHeaderBytes = 48;

void save_volume(const Volume& volume, const std::filesystem::path& path);

// Throws FormatError for a bad magic, byte-order flag, size mismatch or
// non-finite sample, and InvalidExtent when a dimension is zero.
Volume load_volume(const std::filesystem::path& path);

// One decoded frame, luma in [0, 1].
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  // row-major
};

// Rec.601 luma of 8-bit RGB, in [0, 1].
double luma(unsigned r, unsigned g, unsigned b, unsigned max_value = 255);

// Decodes PGM (P2/P5), PPM (P3/P6) and PNG files. Gray images are scaled by
// their maximum value; colour images are reduced to Rec.601 luma.
GrayImage read_image(const std::filesystem::path& path);

// Writes one frame as binary PGM, quantising [0, 1] to `max_value` levels
// (255 or 65535). Values outside [0, 1] are clamped.
void write_pgm(const std::filesystem::path& path, std::span<const double> pixels,
               std::size_t width, std::size_t height, unsigned max_value = 255);

// A numbered frame sequence, e.g. directory "clip", pattern "f%04d.pgm",
// first index 1. `frame_count` 0 reads until the first missing index.
struct FrameSequenceSource {
  std::filesystem::path directory;
  std::string pattern;
  long first_index = 0;
  std::size_t frame_count = 0;
};

// Optional sub-volume; zero width, height or frames means "to the end".
struct VideoCrop {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t t = 0;
  std::size_t frames = 0;

  bool is_identity() const {
    return x == 0 && y == 0 && width == 0 && height == 0 && t == 0 &&
           frames == 0;
  }
};

// Throws FrameGapError naming the first missing index and InconsistentFrames
// when frame sizes differ.
Volume load_video(const FrameSequenceSource& source);

// Loads every .pgm/.ppm/.png file in `directory`, ordered by the last run of
// digits in the file name. Indices must be contiguous.
Volume load_frame_directory(const std::filesystem::path& directory);

// Directory -> frame sequence, ".stv" -> native volume, other files -> a
// single-frame video. The crop is applied afterwards.
Volume load_video_path(const std::filesystem::path& path,
                       const VideoCrop& crop = {});

// Throws InvalidParameter when the crop leaves the volume.
Volume crop(const Volume& volume, const VideoCrop& region);

}  // namespace stgabor

#endif  // STGABOR_IO_HPP_
