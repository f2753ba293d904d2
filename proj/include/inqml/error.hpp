#ifndef INQML_ERROR_HPP
#define INQML_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inqml {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Model or relational-model input that breaks a structural requirement.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Reference to a world (or atom) the model does not declare.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

// A guarded enumeration would exceed its configured bound.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Operation applied outside the fragment it is defined for.
class UnsupportedFragmentError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Resource bounds shared by the enumerating operations.
struct Limits {
  std::size_t max_closure_states = std::size_t{1} << 16;
  std::size_t max_resolutions = std::size_t{1} << 14;
  std::size_t max_powerset_worlds = 20;
  std::size_t max_truth_conditional_worlds = 16;
  std::size_t max_downsets = std::size_t{1} << 16;
  std::size_t max_unfold_elements = std::size_t{1} << 18;
  std::size_t max_game_nodes = std::size_t{1} << 26;
};

}  // namespace inqml

#endif  // INQML_ERROR_HPP
