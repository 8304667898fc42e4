#include "ngrpd/errors.hpp"

#include <atomic>
#include <cstdlib>

namespace ngrpd {

  namespace {
    std::size_t initial_cap() {
      if (char const* env = std::getenv("NGRPD_MAX_CELLS")) {
        char*              end = nullptr;
        unsigned long long v   = std::strtoull(env, &end, 10);
        if (end != env && v > 0) {
          return static_cast<std::size_t>(v);
        }
      }
      return 100000;
    }

    std::atomic<std::size_t>& cap() {
      static std::atomic<std::size_t> value{initial_cap()};
      return value;
    }
  }  // namespace

  std::size_t max_cells() {
    return cap().load();
  }

  void set_max_cells(std::size_t c) {
    cap().store(c);
  }

}  // namespace ngrpd
