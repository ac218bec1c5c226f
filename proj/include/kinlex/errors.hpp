/*
Copyright 2026 The kinlex Authors. All Rights Reserved.

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

#ifndef KINLEX_ERRORS_HPP_
#define KINLEX_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kinlex {

/// Base of every error thrown by the library. The CLI maps these to exit
/// status 1 (data error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedLabel : public Error {
 public:
  explicit MalformedLabel(const std::string& label, const std::string& why)
      : Error("malformed concept label '" + label + "': " + why) {}
};

class SubdomainMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("label '" + label + "' is not in the generated concept set") {}
};

/// A row-level problem in an input or resource file. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class DanglingPatternRef : public Error {
 public:
  using Error::Error;
};

class DuplicatePattern : public Error {
 public:
  using Error::Error;
};

class UnreadableFile : public Error {
 public:
  explicit UnreadableFile(const std::string& path)
      : Error("cannot read '" + path + "'") {}
};

class MissingFile : public Error {
 public:
  explicit MissingFile(const std::string& path)
      : Error("missing resource file '" + path + "'") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

class WordGapConflict : public Error {
 public:
  using Error::Error;
};

class MissingGold : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class NoCommonSubsumer : public Error {
 public:
  using Error::Error;
};

}  // namespace kinlex

#endif  // KINLEX_ERRORS_HPP_
