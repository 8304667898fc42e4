#ifndef NGRPD_ENUMERATE_HPP_
#define NGRPD_ENUMERATE_HPP_

// Exhaustive enumeration of small truncated simplicial objects.

#include <cstddef>
#include <vector>

#include "simp.hpp"

namespace ngrpd {

  struct EnumerationOptions {
    // With groupoid_n >= 0 only n-groupoids are kept, and each level m > n is
    // fixed to Hom(Lambda^m_0, X) with d_1..d_m the evaluations; any
    // n-groupoid is isomorphic to one of that shape, which keeps the search
    // small.
    int         groupoid_n = -1;
    bool        up_to_iso  = true;
    std::size_t limit      = 0;  // stop after this many results (0 = no limit)
  };

  // All simplicial objects truncated at N whose levels have at most
  // `max_size` elements (degree, for GraphCov). Levels run over the
  // canonical representatives of enumerate_objects. Deterministic order.
  std::vector<SimplicialObject> enumerate_simplicial_objects(Site const&               site,
                                                             int                       N,
                                                             std::size_t               max_size,
                                                             EnumerationOptions const& options = {});

}  // namespace ngrpd

#endif  // NGRPD_ENUMERATE_HPP_
