#pragma once
#include <stdexcept>
#include <string>

namespace dlab {

// Error kinds map onto CLI exit codes (input=1, invariant=2, numerical=3).
enum class ErrorKind { Input, Range, Domain, Degeneracy, Invariant, Numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const;

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct RangeError : Error {
  explicit RangeError(const std::string& w) : Error(ErrorKind::Range, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct DegeneracyError : Error {
  explicit DegeneracyError(const std::string& w) : Error(ErrorKind::Degeneracy, w) {}
};
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& w) : Error(ErrorKind::Invariant, w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

}  // namespace dlab
