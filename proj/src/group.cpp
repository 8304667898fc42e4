#include "ngrpd/group.hpp"

#include <algorithm>

#include "ngrpd/errors.hpp"

namespace ngrpd {

  FiniteGroup::FiniteGroup(std::vector<std::string> elements,
                           std::vector<std::vector<int>> table)
      : _elements(std::move(elements)), _table(std::move(table)) {
    int n = static_cast<int>(_elements.size());
    if (n == 0) {
      throw InvalidInput("a group needs at least one element");
    }
    if (static_cast<int>(_table.size()) != n) {
      throw InvalidInput("multiplication table has the wrong number of rows");
    }
    for (auto const& row : _table) {
      if (static_cast<int>(row.size()) != n) {
        throw InvalidInput("multiplication table row has the wrong length");
      }
      for (int v : row) {
        if (v < 0 || v >= n) {
          throw InvalidInput("multiplication table entry out of range");
        }
      }
    }
    auto sorted = _elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("group element labels must be distinct");
    }
    _identity = -1;
    for (int e = 0; e < n && _identity < 0; ++e) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) {
        ok = _table[e][a] == a && _table[a][e] == a;
      }
      if (ok) {
        _identity = e;
      }
    }
    if (_identity < 0) {
      throw InvalidInput("multiplication table has no identity");
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          if (_table[_table[a][b]][c] != _table[a][_table[b][c]]) {
            throw InvalidInput("multiplication is not associative at ("
                               + _elements[a] + "," + _elements[b] + ","
                               + _elements[c] + ")");
          }
        }
      }
    }
    _inverse.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (_table[a][b] == _identity && _table[b][a] == _identity) {
          _inverse[a] = b;
        }
      }
      if (_inverse[a] < 0) {
        throw InvalidInput("element " + _elements[a] + " has no inverse");
      }
    }
  }

  int FiniteGroup::index_of(std::string const& label) const {
    auto it = std::find(_elements.begin(), _elements.end(), label);
    if (it == _elements.end()) {
      throw InvalidInput("unknown group element " + label);
    }
    return static_cast<int>(it - _elements.begin());
  }

  FiniteGroup FiniteGroup::cyclic(int n) {
    std::vector<std::string>      labels;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
      labels.push_back(std::to_string(a));
      for (int b = 0; b < n; ++b) {
        table[a][b] = (a + b) % n;
      }
    }
    return FiniteGroup(std::move(labels), std::move(table));
  }

  FiniteGroup FiniteGroup::klein_four() {
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        table[a][b] = a ^ b;
      }
    }
    return FiniteGroup({"e", "a", "b", "ab"}, std::move(table));
  }

  FiniteGroup FiniteGroup::symmetric3() {
    // Permutations of {0,1,2} in one-line notation; product is composition
    // (ab)(x) = a(b(x)).
    std::vector<std::vector<int>> perms
        = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::string> labels;
    for (auto const& p : perms) {
      labels.push_back(std::to_string(p[0]) + std::to_string(p[1])
                       + std::to_string(p[2]));
    }
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        std::vector<int> c(3);
        for (int x = 0; x < 3; ++x) {
          c[x] = perms[a][perms[b][x]];
        }
        table[a][b] = static_cast<int>(
            std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    }
    return FiniteGroup(std::move(labels), std::move(table));
  }

  std::vector<FiniteGroup> FiniteGroup::all_of_order_at_most_6() {
    return {cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein_four(),
            cyclic(5), cyclic(6), symmetric3()};
  }

}  // namespace ngrpd
