// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace irsmec {

/// Locale-independent text for a double: integral values below 1e15 print
/// without exponent or fraction, everything else as the shortest string that
/// parses back to the same bits.
std::string format_number(double value);

/// 64-bit FNV-1a digest rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace irsmec
