#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace seshadri {

using Exponent = std::vector<int>;

/// Graded reverse lexicographic order on monomials of equal degree:
/// a > b when the last nonzero entry of a - b is negative.
bool grevlex_greater(const Exponent& a, const Exponent& b);

/// All monomials of the given degree in nvars variables, in decreasing
/// grevlex order (x0^d first, x_{n}^d last).
std::vector<Exponent> monomials(int nvars, int degree);

std::size_t monomial_count(int nvars, int degree);

/// Position lookup into a monomials() list.
class MonomialIndex {
 public:
  MonomialIndex(int nvars, int degree);

  const std::vector<Exponent>& list() const noexcept { return list_; }
  std::size_t size() const noexcept { return list_.size(); }
  /// Throws InvalidArgument for a monomial of the wrong shape.
  std::size_t index_of(const Exponent& e) const;

 private:
  std::vector<Exponent> list_;
  std::map<Exponent, std::size_t> index_;
};

}  // namespace seshadri
