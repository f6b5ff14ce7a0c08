// Copyright 2026 The TNN Document Recognition Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small internal helpers: seed mixing, portable uniform draws, file I/O.

#ifndef TNN_SRC_UTIL_HPP_
#define TNN_SRC_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

namespace tnn::detail {

// splitmix64 finalizer; spreads nearby seeds across the state space.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_symmetric(std::mt19937_64& rng) { return uniform01(rng) - 0.5; }

std::string read_file(const std::filesystem::path& path, std::string_view what);
void write_file(const std::filesystem::path& path, std::string_view content,
                std::string_view what);

}  // namespace tnn::detail

#endif  // TNN_SRC_UTIL_HPP_
