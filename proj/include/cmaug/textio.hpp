// Copyright 2026 The cmaug Authors
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

// Deterministic text formatting and hashing helpers shared by the file
// writers. All numeric output goes through format_double so identical runs
// produce byte-identical files.

#ifndef CMAUG_TEXTIO_HPP_
#define CMAUG_TEXTIO_HPP_

#include <cstdint>
#include <string>

namespace cmaug {

/// Shortest representation that round-trips a double exactly.
std::string format_double(double v);

uint64_t fnv1a64(const void* data, size_t size);
uint64_t fnv1a64_file(const std::string& path);  // throws kIoError
std::string to_hex(uint64_t v);

}  // namespace cmaug

#endif  // CMAUG_TEXTIO_HPP_
