// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mapalign/volume.hpp"

namespace mapalign {

class MrcError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// MRC2014 subset: 1024-byte little-endian header, mode 2 (32-bit float),
// cubic grids only. Unsupported files are rejected with a diagnostic that
// names the offending header word.

Volume read_mrc(const std::string& path);
void write_mrc(const std::string& path, const Volume& v);

}  // namespace mapalign
