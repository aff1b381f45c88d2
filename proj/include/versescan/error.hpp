// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace versescan {

/// Base of every error the library raises. Loader and CLI code catch this
/// to map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that could not be read or parsed (file level). The CLI maps all of
/// these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class IoError : public InputError {
 public:
  explicit IoError(std::string path, const std::string& what = "cannot open file")
      : InputError(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class MalformedLine : public InputError {
 public:
  MalformedLine(std::size_t line_no, const std::string& why)
      : InputError("malformed line " + std::to_string(line_no) + ": " + why), line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class CorpusIncomplete : public InputError {
 public:
  explicit CorpusIncomplete(std::size_t found)
      : InputError("corpus incomplete: found " + std::to_string(found) + " verses, expected 6236"),
        found_(found) {}
  std::size_t found_count() const noexcept { return found_; }

 private:
  std::size_t found_;
};

class DuplicateVerse : public InputError {
 public:
  explicit DuplicateVerse(const std::string& ref) : InputError("duplicate verse " + ref), ref_(ref) {}
  const std::string& ref() const noexcept { return ref_; }

 private:
  std::string ref_;
};

class UnknownVerseRef : public InputError {
 public:
  explicit UnknownVerseRef(const std::string& ref) : InputError("unknown verse " + ref), ref_(ref) {}
  const std::string& ref() const noexcept { return ref_; }

 private:
  std::string ref_;
};

class UnknownCategory : public InputError {
 public:
  explicit UnknownCategory(const std::string& name)
      : InputError("unknown category '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class SchemaViolation : public InputError {
 public:
  SchemaViolation(std::size_t line_no, std::string field, const std::string& why)
      : InputError("schema violation at line " + std::to_string(line_no) + ", field '" + field +
                   "': " + why),
        line_no_(line_no),
        field_(std::move(field)) {}
  std::size_t line_no() const noexcept { return line_no_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_no_;
  std::string field_;
};

class UnknownGroupKey : public InputError {
 public:
  explicit UnknownGroupKey(const std::string& key) : InputError("unknown group key '" + key + "'") {}
};

/// Analysis asked for over an empty match set.
class EmptyDataset : public Error {
 public:
  EmptyDataset() : Error("dataset contains no verse matches") {}
};

/// Statistic undefined on the given input (too few points, zero variance).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace versescan
