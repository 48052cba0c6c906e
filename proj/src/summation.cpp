#include "dsum/summation.hpp"

#include <string>

namespace dsum::detail {

void check_sum_params(std::uint64_t n, int p, int q) {
  if (n == 0) throw InvalidArgument("ground set must be nonempty");
  if (p < 0 || q < 0) throw InvalidArgument("p and q must be nonnegative");
}

void check_label_key(const Universe& u, int p, int q, const InputLabel& label) {
  const auto& [ind, sup] = label;
  const auto text = "(" + format_subset(ind) + " | " + format_subset(sup) + ")";
  if (ind.level() != u.b() || sup.level() != u.b()) throw InvalidArgument("input " + text + " is not on the leaf level");
  if (u.has_phantom(sup)) throw InvalidArgument("input " + text + " mentions an element >= n");
  if (sup.size() > static_cast<std::size_t>(p) || ind.size() > static_cast<std::size_t>(q) || !is_subset(ind, sup)) {
    throw InvalidArgument("input " + text + " violates I ⊆ X, |X| <= p, |I| <= q");
  }
}

void check_subset_key(const Universe& u, std::size_t size, const Subset& x, const char* what) {
  if (x.level() != u.b()) throw InvalidArgument(std::string(what) + " key " + format_subset(x) + " is not on the leaf level");
  if (u.has_phantom(x)) throw InvalidArgument(std::string(what) + " key " + format_subset(x) + " mentions an element >= n");
  if (x.size() != size) {
    throw InvalidArgument(std::string(what) + " key " + format_subset(x) + " must have exactly " + std::to_string(size) + " elements");
  }
}

void check_oracle_budget(std::uint64_t n, int p, int q) {
  const double work = [&] {
    auto up_to = [n](int k) {
      double term = 1;
      double total = 1;
      for (int j = 1; j <= k && static_cast<std::uint64_t>(j) <= n; ++j) {
        term = term * static_cast<double>(n - static_cast<std::uint64_t>(j) + 1) / j;
        total += term;
      }
      return total;
    };
    return up_to(p) * up_to(q);
  }();
  if (work > static_cast<double>(kOracleBudget)) throw ScaleGuardError("oracle instance exceeds 10^7 summand evaluations");
}

}  // namespace dsum::detail
