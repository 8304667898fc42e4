#include "ngrpd/csp.hpp"

#include <algorithm>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  int FunctionalCsp::add_variable(std::size_t universe, std::vector<int> const& allowed) {
    std::vector<char> mask(universe, 0);
    for (int v : allowed) {
      mask[v] = 1;
    }
    _mask.push_back(std::move(mask));
    _allowed.push_back(allowed);
    _links.emplace_back();
    _value.push_back(-1);
    _distinct_group.push_back(-1);
    return static_cast<int>(_allowed.size()) - 1;
  }

  void FunctionalCsp::add_link(int a, int b, std::vector<int> const* table) {
    _links[a].push_back({b, table});
  }

  void FunctionalCsp::set_order(std::vector<int> order) {
    _order = std::move(order);
  }

  void FunctionalCsp::require_distinct(std::vector<int> const& vars) {
    int         g        = static_cast<int>(_groups.size());
    std::size_t universe = 0;
    for (int v : vars) {
      _distinct_group[v] = g;
      universe           = std::max(universe, _mask[v].size());
    }
    _groups.push_back(vars);
    _used.emplace_back(universe, 0);
  }

  bool FunctionalCsp::assign(int var, int value, std::vector<int>& trail) {
    std::size_t start = trail.size();
    std::vector<std::pair<int, int>> queue{{var, value}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [x, val] = queue[head];
      if (val < 0 || static_cast<std::size_t>(val) >= _mask[x].size()
          || !_mask[x][val]) {
        undo(trail, start);
        return false;
      }
      if (_value[x] >= 0) {
        if (_value[x] != val) {
          undo(trail, start);
          return false;
        }
        continue;
      }
      int g = _distinct_group[x];
      if (g >= 0) {
        if (_used[g][val] > 0) {
          undo(trail, start);
          return false;
        }
        ++_used[g][val];
      }
      _value[x] = val;
      trail.push_back(x);
      for (auto const& link : _links[x]) {
        queue.emplace_back(link.target, (*link.table)[val]);
      }
    }
    return true;
  }

  void FunctionalCsp::undo(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      int x = trail.back();
      trail.pop_back();
      int g = _distinct_group[x];
      if (g >= 0) {
        --_used[g][_value[x]];
      }
      _value[x] = -1;
    }
  }

  bool FunctionalCsp::search(std::size_t                                         pos,
                             std::function<bool(std::vector<int> const&)> const& visit,
                             std::size_t&                                        count,
                             bool&                                               stop) {
    while (pos < _order.size() && _value[_order[pos]] >= 0) {
      ++pos;
    }
    if (pos == _order.size()) {
      ++count;
      if (count > max_cells()) {
        throw LimitExceeded("enumeration exceeded NGRPD_MAX_CELLS solutions");
      }
      if (!visit(_value)) {
        stop = true;
      }
      return true;
    }
    int              var = _order[pos];
    std::vector<int> trail;
    for (int val : _allowed[var]) {
      if (assign(var, val, trail)) {
        search(pos + 1, visit, count, stop);
        undo(trail, 0);
        if (stop) {
          break;
        }
      }
    }
    return true;
  }

  std::size_t FunctionalCsp::solve(std::function<bool(std::vector<int> const&)> const& visit) {
    std::vector<char> seen(_allowed.size(), 0);
    std::vector<int>  order;
    for (int v : _order) {
      if (!seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
    }
    for (std::size_t v = 0; v < _allowed.size(); ++v) {
      if (!seen[v]) {
        order.push_back(static_cast<int>(v));
      }
    }
    _order = std::move(order);
    std::fill(_value.begin(), _value.end(), -1);
    for (auto& u : _used) {
      std::fill(u.begin(), u.end(), 0);
    }
    std::size_t count = 0;
    bool        stop  = false;
    search(0, visit, count, stop);
    return count;
  }

}  // namespace ngrpd
