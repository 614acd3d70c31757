#include "dirac_lab/errors.hpp"

namespace dlab {

int Error::exit_code() const {
  switch (kind_) {
    case ErrorKind::Invariant: return 2;
    case ErrorKind::Numerical: return 3;
    default: return 1;
  }
}

}  // namespace dlab
