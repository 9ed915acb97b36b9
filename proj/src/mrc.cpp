// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#include "mapalign/mrc.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace mapalign {

namespace {

constexpr std::size_t kHeaderBytes = 1024;

int32_t word_i32(const unsigned char* h, int word) {
  int32_t v;
  std::memcpy(&v, h + 4 * (word - 1), 4);
  return v;
}

void put_i32(unsigned char* h, int word, int32_t v) {
  std::memcpy(h + 4 * (word - 1), &v, 4);
}

void put_f32(unsigned char* h, int word, float v) {
  std::memcpy(h + 4 * (word - 1), &v, 4);
}

}  // namespace

Volume read_mrc(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MrcError("cannot open '" + path + "'");
  unsigned char header[kHeaderBytes];
  f.read(reinterpret_cast<char*>(header), kHeaderBytes);
  if (!f) throw MrcError("'" + path + "': file shorter than the 1024-byte header");

  const int32_t nx = word_i32(header, 1);
  const int32_t ny = word_i32(header, 2);
  const int32_t nz = word_i32(header, 3);
  const int32_t mode = word_i32(header, 4);
  if (nx <= 0)
    throw MrcError("'" + path + "': nx (header word 1) is " + std::to_string(nx));
  if (ny != nx)
    throw MrcError("'" + path + "': non-cubic map, ny (header word 2) = " +
                   std::to_string(ny) + " but nx = " + std::to_string(nx));
  if (nz != nx)
    throw MrcError("'" + path + "': non-cubic map, nz (header word 3) = " +
                   std::to_string(nz) + " but nx = " + std::to_string(nx));
  if (mode != 2)
    throw MrcError("'" + path + "': unsupported mode (header word 4) = " +
                   std::to_string(mode) + ", only mode 2 (float32) is handled");

  const std::size_t count = static_cast<std::size_t>(nx) * nx * nx;
  std::vector<float> raw(count);
  f.read(reinterpret_cast<char*>(raw.data()), count * sizeof(float));
  if (!f) throw MrcError("'" + path + "': truncated data section");

  Volume v(nx);
  for (std::size_t i = 0; i < count; ++i) v.data()[i] = raw[i];

  float cella;
  std::memcpy(&cella, header + 4 * 10, 4);  // word 11: cell x extent
  if (cella > 0) v.voxel_size = cella / nx;
  return v;
}

void write_mrc(const std::string& path, const Volume& v) {
  const int n = v.n();
  unsigned char header[kHeaderBytes] = {0};
  put_i32(header, 1, n);
  put_i32(header, 2, n);
  put_i32(header, 3, n);
  put_i32(header, 4, 2);
  put_i32(header, 8, n);  // mx, my, mz
  put_i32(header, 9, n);
  put_i32(header, 10, n);
  const float extent = static_cast<float>((v.voxel_size > 0 ? v.voxel_size : 1.0) * n);
  put_f32(header, 11, extent);
  put_f32(header, 12, extent);
  put_f32(header, 13, extent);
  put_f32(header, 14, 90.0f);
  put_f32(header, 15, 90.0f);
  put_f32(header, 16, 90.0f);
  put_i32(header, 17, 1);  // axis order x, y, z
  put_i32(header, 18, 2);
  put_i32(header, 19, 3);
  const auto [mn, mx] = std::minmax_element(v.data().begin(), v.data().end());
  double mean = 0.0;
  for (double x : v.data()) mean += x;
  mean /= v.size();
  put_f32(header, 20, static_cast<float>(*mn));
  put_f32(header, 21, static_cast<float>(*mx));
  put_f32(header, 22, static_cast<float>(mean));
  put_i32(header, 23, 1);             // space group: P1
  std::memcpy(header + 208, "MAP ", 4);  // word 53
  header[212] = 0x44;                 // little-endian machine stamp
  header[213] = 0x44;

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw MrcError("cannot create '" + path + "'");
  f.write(reinterpret_cast<const char*>(header), kHeaderBytes);
  std::vector<float> raw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) raw[i] = static_cast<float>(v.data()[i]);
  f.write(reinterpret_cast<const char*>(raw.data()), raw.size() * sizeof(float));
  if (!f) throw MrcError("write failed for '" + path + "'");
}

}  // namespace mapalign
