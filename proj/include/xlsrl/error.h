#ifndef XLSRL_ERROR_H_
#define XLSRL_ERROR_H_

#include <stdexcept>
#include <string>

namespace xlsrl {

// Malformed input data. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed rows that do not describe a valid dependency tree.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs that parse but are inconsistent with each other (mismatched
// lengths, missing sidecar rows, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xlsrl

#endif  // XLSRL_ERROR_H_
