#ifndef NGRPD_CSP_HPP_
#define NGRPD_CSP_HPP_

// Backtracking search over assignments constrained by functional links.
//
// Every limit and hom-set in this library reduces to the same problem: pick
// a value for each variable from its allowed set so that for every link
// (a, b, table) the value of b equals table[value of a]. Assigning a variable
// forces every variable reachable along links, so the search branches only
// on variables not yet determined.

#include <cstddef>
#include <functional>
#include <vector>

namespace ngrpd {

  class FunctionalCsp {
   public:
    // A variable ranging over 0..universe-1, restricted to `allowed`.
    int add_variable(std::size_t universe, std::vector<int> const& allowed);
    // value(b) == (*table)[value(a)]; the table must outlive the solver.
    void add_link(int a, int b, std::vector<int> const* table);
    // Branching order; unlisted variables follow in creation order.
    void set_order(std::vector<int> order);
    // Optional: reject assignments whose values collide within a group.
    void require_distinct(std::vector<int> const& vars);

    // Calls visit for each solution until it returns false. Returns the
    // number of solutions visited.
    std::size_t solve(std::function<bool(std::vector<int> const&)> const& visit);

    std::size_t size() const noexcept {
      return _allowed.size();
    }

   private:
    struct Link {
      int                     target;
      std::vector<int> const* table;
    };

    bool assign(int var, int value, std::vector<int>& trail);
    void undo(std::vector<int>& trail, std::size_t mark);
    bool search(std::size_t pos, std::function<bool(std::vector<int> const&)> const& visit,
                std::size_t& count, bool& stop);

    std::vector<std::vector<char>> _mask;
    std::vector<std::vector<int>>  _allowed;
    std::vector<std::vector<Link>> _links;
    std::vector<int>               _order;
    std::vector<int>               _value;
    std::vector<int>               _distinct_group;
    std::vector<std::vector<int>>  _groups;
    std::vector<std::vector<int>>  _used;  // per group: value -> use count
  };

}  // namespace ngrpd

#endif  // NGRPD_CSP_HPP_
