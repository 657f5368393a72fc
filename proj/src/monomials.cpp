#include "seshadri/monomials.hpp"

#include "seshadri/error.hpp"

#include <algorithm>

namespace seshadri {

bool grevlex_greater(const Exponent& a, const Exponent& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

namespace {

void compositions(int nvars, int remaining, Exponent& current, std::size_t pos, std::vector<Exponent>& out) {
  if (pos + 1 == static_cast<std::size_t>(nvars)) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[pos] = k;
    compositions(nvars, remaining - k, current, pos + 1, out);
  }
}

}  // namespace

std::vector<Exponent> monomials(int nvars, int degree) {
  if (nvars < 1 || degree < 0) throw InvalidArgument("monomials need nvars >= 1 and degree >= 0");
  std::vector<Exponent> out;
  Exponent current(static_cast<std::size_t>(nvars), 0);
  compositions(nvars, degree, current, 0, out);
  std::sort(out.begin(), out.end(), grevlex_greater);
  return out;
}

std::size_t monomial_count(int nvars, int degree) {
  // C(degree + nvars - 1, nvars - 1)
  std::size_t k = static_cast<std::size_t>(nvars - 1);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (static_cast<std::size_t>(degree) + i) / i;
  }
  return result;
}

MonomialIndex::MonomialIndex(int nvars, int degree) : list_(monomials(nvars, degree)) {
  for (std::size_t i = 0; i < list_.size(); ++i) index_.emplace(list_[i], i);
}

std::size_t MonomialIndex::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw InvalidArgument("monomial not in index");
  return it->second;
}

}  // namespace seshadri
