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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irsmec {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical argument outside its domain (non-positive distance, rate, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Occupied CPU frequency reaches or exceeds the processor's total frequency.
class SaturatedProcessorError : public DomainError {
public:
    using DomainError::DomainError;
};

/// No parameter value can satisfy the requested target.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Configuration rejected at ingestion. `line` is 0 for command-line overrides.
class ConfigError : public Error {
public:
    ConfigError(std::string key, std::size_t line, const std::string& what)
        : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, std::size_t line, const std::string& what) {
        std::string msg;
        if (line > 0) {
            msg = "line " + std::to_string(line) + ": ";
        }
        if (!key.empty()) {
            msg += "key '" + key + "': ";
        }
        return msg + what;
    }

    std::string key_;
    std::size_t line_;
};

}  // namespace irsmec
