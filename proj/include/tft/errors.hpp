#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tft {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: shapes that disagree with dimensions, bad tables.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in any of the text formats. `position` is a character offset
/// for the word grammar and a 1-based line number for the file formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Output arity of layer `layer` (1-based) differs from input arity of the next.
class ArityError : public Error {
 public:
  ArityError(const std::string& what, std::size_t layer) : Error(what), layer_(layer) {}
  std::size_t layer() const { return layer_; }

 private:
  std::size_t layer_;
};

/// Inconsistent or missing group labels on a labeled bordism.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Raised when a derived structure needs an invertible pairing and it is not.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A field-theory oracle violated one of the field-theory axioms during
/// extraction of bundle data.
class ExtractionError : public Error {
 public:
  ExtractionError(const std::string& axiom, const std::string& what)
      : Error(axiom + ": " + what), axiom_(axiom) {}
  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

/// A file that cannot be read.
class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace tft
