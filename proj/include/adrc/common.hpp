/*
Copyright 2026 The ADRC Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef ADRC_COMMON_HPP
#define ADRC_COMMON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adrc {

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or unsupported configuration (sample rate, bitrate, order, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Malformed stream container (bad magic, version, header fields).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

/// A single frame failed to parse or decode; carries the frame index so a
/// caller can skip it and resume with the next frame.
class FrameError : public Error {
 public:
  FrameError(std::size_t frame_index, const std::string& what)
      : Error("frame " + std::to_string(frame_index) + ": " + what),
        frame_index_(frame_index) {}
  std::size_t frame_index() const { return frame_index_; }

 private:
  std::size_t frame_index_;
};

/// Bit budget too small to hold the transport payload headers.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

}  // namespace adrc

#endif  // ADRC_COMMON_HPP
