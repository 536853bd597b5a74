#ifndef DEPCAM_ERRORS_HPP
#define DEPCAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace depcam {

// Bad arguments or shapes supplied by the caller. The CLI maps this to exit
// status 2; every other depcam error maps to 1.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Input that is well-formed but mathematically unusable (e.g. rank deficient).
class DegenerateInputError : public std::runtime_error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : std::runtime_error(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file contents. Row and column are 1-based; 0 means "not known".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::size_t col = 0)
      : std::runtime_error(what), row_(row), col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace depcam

#endif  // DEPCAM_ERRORS_HPP
