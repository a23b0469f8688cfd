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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "stgabor/error.hpp"
#include "stgabor/io.hpp"

namespace stgabor {
namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian hosts are not supported");

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<unsigned char>(bits & 0xffu));
    bits = static_cast<U>(bits >> 8);
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::make_unsigned_t<T>;
  U bits = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) {
    bits = static_cast<U>((bits << 8) | p[i]);
  }
  return static_cast<T>(bits);
}

}  // namespace

void save_volume(const Volume& volume, const std::filesystem::path& path) {
  require_valid(volume, "volume");
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (volume.width() > kMax || volume.height() > kMax || volume.frames() > kMax) {
    throw InvalidInput("volume too large for the native format");
  }
  std::vector<unsigned char> bytes;
  bytes.reserve(kVolumeHeaderBytes + 8 * volume.size());
  bytes.insert(bytes.end(), std::begin(kVolumeMagic), std::end(kVolumeMagic));
  bytes.push_back(1);
  bytes.insert(bytes.end(), 3, 0);
  put_le(bytes, static_cast<std::uint32_t>(volume.width()));
  put_le(bytes, static_cast<std::uint32_t>(volume.height()));
  put_le(bytes, static_cast<std::uint32_t>(volume.frames()));
  put_le(bytes, static_cast<std::int64_t>(volume.origin().x));
  put_le(bytes, static_cast<std::int64_t>(volume.origin().y));
  put_le(bytes, static_cast<std::int64_t>(volume.origin().t));
  for (double v : volume.data()) put_le(bytes, std::bit_cast<std::uint64_t>(v));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

Volume load_volume(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  const std::string where = path.string() + ": ";
  if (bytes.size() < kVolumeHeaderBytes) {
    throw FormatError(where + "file shorter than the volume header");
  }
  if (std::memcmp(bytes.data(), kVolumeMagic, sizeof(kVolumeMagic)) != 0) {
    throw FormatError(where + "not a stgabor volume (bad magic)");
  }
  if (bytes[8] != 1) {
    throw FormatError(where + "unsupported byte-order flag " +
                      std::to_string(bytes[8]));
  }
  const Extent extent{get_le<std::uint32_t>(&bytes[12]),
                      get_le<std::uint32_t>(&bytes[16]),
                      get_le<std::uint32_t>(&bytes[20])};
  if (extent.width == 0 || extent.height == 0 || extent.frames == 0) {
    throw InvalidExtent(where + "declared extent " +
                        std::to_string(extent.width) + "x" +
                        std::to_string(extent.height) + "x" +
                        std::to_string(extent.frames) + " has a zero dimension");
  }
  const Origin origin{static_cast<long>(get_le<std::int64_t>(&bytes[24])),
                      static_cast<long>(get_le<std::int64_t>(&bytes[32])),
                      static_cast<long>(get_le<std::int64_t>(&bytes[40]))};
  constexpr auto kMaxVoxels = std::numeric_limits<std::size_t>::max() / 8;
  if (extent.width > kMaxVoxels / extent.height ||
      extent.width * extent.height > kMaxVoxels / extent.frames) {
    throw FormatError(where + "declared extent overflows");
  }
  const std::size_t voxels = extent.voxels();
  if ((bytes.size() - kVolumeHeaderBytes) / 8 != voxels ||
      (bytes.size() - kVolumeHeaderBytes) % 8 != 0) {
    throw FormatError(where + "payload holds " +
                      std::to_string(bytes.size() - kVolumeHeaderBytes) +
                      " bytes, expected " + std::to_string(8 * voxels));
  }
  std::vector<double> data(voxels);
  for (std::size_t i = 0; i < voxels; ++i) {
    data[i] = std::bit_cast<double>(
        get_le<std::uint64_t>(&bytes[kVolumeHeaderBytes + 8 * i]));
    if (!std::isfinite(data[i])) {
      throw FormatError(where + "non-finite sample at index " + std::to_string(i));
    }
  }
  return Volume(extent, std::move(data), origin);
}

}  // namespace stgabor
