// Copyright 2026 The EMN Linker Authors.
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

#ifndef EMN_ERRORS_H_
#define EMN_ERRORS_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace emn {

// Base class of every domain error raised by the library. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(what) {}
};

// Errors tied to a position in an input file. Line numbers are 1-based; 0
// means the error is not attached to a specific line.
class LineError : public Error {
 public:
  LineError(const std::string &what, size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class FormatError : public LineError {
 public:
  explicit FormatError(const std::string &what, size_t line = 0)
      : LineError(what, line) {}
};

class DuplicateIdError : public LineError {
 public:
  DuplicateIdError(const std::string &id, size_t line)
      : LineError("duplicate id '" + id + "'", line), id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

class NegativeCountError : public LineError {
 public:
  NegativeCountError(const std::string &what, size_t line)
      : LineError(what, line) {}
};

class EmptyTagError : public Error {
 public:
  explicit EmptyTagError(const std::string &tag)
      : Error("tag '" + tag + "' has an empty body") {}
};

class EmptyCorpusError : public Error {
 public:
  explicit EmptyCorpusError(const std::string &what) : Error(what) {}
};

class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string &id)
      : Error("unknown entity '" + id + "'"), id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

class EmptyModelError : public Error {
 public:
  explicit EmptyModelError(const std::string &id)
      : Error("entity '" + id + "' has no clues"), id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

class KeyMismatchError : public Error {
 public:
  explicit KeyMismatchError(const std::string &what) : Error(what) {}
};

class NoCandidateError : public Error {
 public:
  NoCandidateError() : Error("no tweet clue matches any clue in the EMN") {}
};

class InsufficientDataError : public Error {
 public:
  explicit InsufficientDataError(const std::string &what,
                                 std::optional<int> fold = std::nullopt)
      : Error(fold ? "fold " + std::to_string(*fold) + ": " + what : what),
        fold_(fold) {}
  std::optional<int> fold() const { return fold_; }

 private:
  std::optional<int> fold_;
};

class EmptySetError : public Error {
 public:
  explicit EmptySetError(const std::string &what) : Error(what) {}
};

// Invalid parameter values (k < 1, window < 1, unknown config keys, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what) : Error(what) {}
};

}  // namespace emn

#endif  // EMN_ERRORS_H_
