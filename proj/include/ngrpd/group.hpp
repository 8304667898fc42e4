#ifndef NGRPD_GROUP_HPP_
#define NGRPD_GROUP_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace ngrpd {

  //! A finite group given by its full multiplication table.
  //!
  //! Elements are indexed 0..order-1; `multiply(a, b)` is the product ab.
  //! The group laws are checked on construction and InvalidInput is thrown
  //! if any of them fails.
  class FiniteGroup {
   public:
    FiniteGroup(std::vector<std::string> elements,
                std::vector<std::vector<int>> table);

    static FiniteGroup cyclic(int n);
    static FiniteGroup klein_four();
    static FiniteGroup symmetric3();
    // Every group of order at most 6, up to isomorphism.
    static std::vector<FiniteGroup> all_of_order_at_most_6();

    std::size_t order() const noexcept {
      return _elements.size();
    }
    int multiply(int a, int b) const {
      return _table[a][b];
    }
    int identity() const noexcept {
      return _identity;
    }
    int inverse(int a) const {
      return _inverse[a];
    }
    std::string const& label(int a) const {
      return _elements[a];
    }
    std::vector<std::string> const& elements() const noexcept {
      return _elements;
    }
    std::vector<std::vector<int>> const& table() const noexcept {
      return _table;
    }
    int index_of(std::string const& label) const;

    bool operator==(FiniteGroup const& other) const {
      return _elements == other._elements && _table == other._table;
    }

   private:
    std::vector<std::string>      _elements;
    std::vector<std::vector<int>> _table;
    int                           _identity = 0;
    std::vector<int>              _inverse;
  };

}  // namespace ngrpd

#endif  // NGRPD_GROUP_HPP_
