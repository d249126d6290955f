// Copyright 2026 The morphotrans Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphotrans {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data. Carries the offending file and 1-based line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), path_(path), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_ = 0;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial limit was exceeded (e.g. permuting more than the allowed arity).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant did not hold. Maps to exit code 3 in the CLI.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace morphotrans
