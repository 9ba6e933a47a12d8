// Copyright 2026 The noisebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEBENCH_ERROR_H_
#define NOISEBENCH_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noisebench {

// Root of every error thrown by the library. Callers that only care about
// "something went wrong" catch this; the subclasses carry the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad container/header layout (WAV chunks, MIDI chunks, varints).
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCodecError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A numeric precondition was violated (empty buffer, bad grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// SNR is undefined for a signal with zero power.
class SilentSignalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Text/binary parse failure. `position()` is a 1-based line number for text
// formats and a byte offset for binary ones.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class TranscriberError : public Error {
 public:
  TranscriberError(const std::string& what, std::string stderr_text)
      : Error(what), stderr_text_(std::move(stderr_text)) {}
  const std::string& stderr_text() const { return stderr_text_; }

 private:
  std::string stderr_text_;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

class DegenerateSampleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Invalid command-line usage; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace noisebench

#endif  // NOISEBENCH_ERROR_H_
