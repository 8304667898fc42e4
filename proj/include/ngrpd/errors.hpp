#ifndef NGRPD_ERRORS_HPP_
#define NGRPD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ngrpd {

  // Malformed or inconsistent input data (bad JSON, maps that are not total,
  // actions that are not bijective, ...).
  class InvalidInput : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A precondition of an operation does not hold (truncation too shallow,
  // uncertified input, ...). The CLI maps this to the "refused" status.
  class Refused : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An enumeration exceeded the configured cell cap (NGRPD_MAX_CELLS).
  class LimitExceeded : public Refused {
   public:
    using Refused::Refused;
  };

  // Upper bound on enumerated cells / solutions. Reads NGRPD_MAX_CELLS once,
  // default 100000.
  std::size_t max_cells();
  void        set_max_cells(std::size_t cap);

}  // namespace ngrpd

#endif  // NGRPD_ERRORS_HPP_
