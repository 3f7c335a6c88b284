#include "orbitforge/partitions.hpp"

#include <map>
#include <mutex>

#include "orbitforge/errors.hpp"

namespace orbitforge::partitions {

BigInt bell_number(unsigned n) {
  // Bell triangle: each row starts with the last entry of the previous row.
  std::vector<BigInt> row{1};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<BigInt> next{row.back()};
    next.reserve(row.size() + 1);
    for (const auto& value : row) next.push_back(next.back() + value);
    row = std::move(next);
  }
  return row.front();
}

BigInt stirling2(unsigned n, unsigned blocks) {
  if (blocks > n) return 0;
  // row[j] = S(i, j), updated in place from the right.
  std::vector<BigInt> row(blocks + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = std::min(i, blocks); j >= 1; --j) row[j] = BigInt(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[blocks];
}

namespace {

std::mutex memo_mutex;
std::map<unsigned, std::vector<BigInt>> memo;

}  // namespace

BigInt bounded_block_partitions(unsigned k, unsigned n) {
  if (k == 0) throw ValidationError("block size bound k must be positive");
  std::lock_guard lock(memo_mutex);
  auto& table = memo[k];
  if (table.empty()) table.push_back(1);
  for (unsigned m = static_cast<unsigned>(table.size()); m <= n; ++m) {
    BigInt total = 0;
    for (unsigned i = 0; i < k && i < m; ++i) total += binomial(m - 1, i) * table[m - 1 - i];
    table.push_back(std::move(total));
  }
  return table[n];
}

BigInt bounded_block_partitions_bruteforce(unsigned k, unsigned n, const Caps& caps) {
  if (k == 0) throw ValidationError("block size bound k must be positive");
  if (n > caps.oracle_cap) {
    throw CapExceeded("oracle range exceeded: n = " + std::to_string(n) + " > oracle_cap = " +
                      std::to_string(caps.oracle_cap));
  }
  std::uint64_t count = 0;
  std::vector<unsigned> sizes;
  for_each_set_partition(n, [&](std::span<const std::uint32_t> rgs) {
    sizes.assign(n + 1, 0);
    bool ok = true;
    for (auto block : rgs) {
      if (++sizes[block] > k) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    return true;
  });
  return count;
}

BigInt uniform_block_partitions(unsigned k, unsigned n) {
  if (k == 0) throw ValidationError("block size k must be positive");
  BigInt result = 1;
  for (unsigned m = 1; m <= n; ++m) result *= binomial(std::uint64_t{k} * m - 1, k - 1);
  return result;
}

BigInt uniform_block_partitions_closed_form(unsigned k, unsigned n) {
  if (k == 0) throw ValidationError("block size k must be positive");
  return factorial(std::uint64_t{k} * n) / (factorial(n) * pow(factorial(k), n));
}

CountTable count_table(unsigned k, unsigned n_max) {
  CountTable table{k, {}};
  table.values.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) table.values.push_back(bounded_block_partitions(k, n));
  return table;
}

bool check_lower_bound(unsigned k, const Rational& epsilon, unsigned n) {
  if (k == 0 || n == 0) throw ValidationError("check_lower_bound needs k >= 1 and n >= 1");
  if (!epsilon.positive()) throw ValidationError("epsilon must be positive");
  const Rational q = Rational(k - 1, k) - epsilon;
  if (k >= 2 && !q.positive()) throw ValidationError("epsilon must be below (k-1)/k");
  if (!q.positive()) return true;
  // p^b >= n^{a n}
  const auto a = static_cast<std::uint64_t>(q.num());
  const auto b = static_cast<std::uint64_t>(q.den());
  return pow(bounded_block_partitions(k, n), b) >= pow(BigInt(n), a * n);
}

std::optional<unsigned> lower_bound_onset(unsigned k, const Rational& epsilon, unsigned n_max) {
  if (n_max == 0 || !check_lower_bound(k, epsilon, n_max)) return std::nullopt;
  unsigned onset = n_max;
  while (onset > 1 && check_lower_bound(k, epsilon, onset - 1)) --onset;
  return onset;
}

namespace {

void require_upper_exponent(unsigned k, const Rational& d) {
  if (k == 0) throw ValidationError("block size bound k must be positive");
  if (!(d > Rational(k - 1, k))) throw ValidationError("exponent d must exceed (k-1)/k");
}

}  // namespace

bool check_upper_bound_termwise(unsigned k, const Rational& d, unsigned n) {
  require_upper_exponent(k, d);
  if (!(d < Rational(1))) throw ValidationError("exponent d must be below 1");
  if (n == 0) throw ValidationError("n must be positive");
  const auto a = static_cast<std::uint64_t>(d.num());
  const auto b = static_cast<std::uint64_t>(d.den());
  BigInt falling = 1;  // n (n-1) ... (n-i)
  for (unsigned i = 0; i < k; ++i) {
    if (i >= n) break;  // C(n-1, i) = 0 from here on
    falling *= n - i;
    const BigInt lhs = pow(BigInt(k) * binomial(n - 1, i), b);
    if (!(lhs < pow(falling, a))) return false;
  }
  return true;
}

bool below_c_n_pow_dn(const BigInt& value, const Rational& c, const Rational& d, unsigned n) {
  if (!c.positive() || d < Rational(0)) throw ValidationError("c must be positive and d nonnegative");
  const auto a = static_cast<std::uint64_t>(d.num());
  const auto b = static_cast<std::uint64_t>(d.den());
  // value < (cn/cd) n^{a n / b}  <=>  value^b cd^b < cn^b n^{a n}
  return pow(value, b) * pow(BigInt(c.den()), b) < pow(BigInt(c.num()), b) * pow(BigInt(n), a * n);
}

UpperConstant find_upper_constant(unsigned k, const Rational& d, unsigned n_max, const Caps& caps) {
  require_upper_exponent(k, d);
  if (n_max == 0) throw ValidationError("n_max must be positive");
  const auto a = static_cast<std::uint64_t>(d.num());
  const auto b = static_cast<std::uint64_t>(d.den());

  std::vector<BigInt> scale(n_max + 1);   // n^{a n}
  std::vector<BigInt> target(n_max + 1);  // p_k(n)^b
  for (unsigned n = 1; n <= n_max; ++n) {
    scale[n] = pow(BigInt(n), a * n);
    target[n] = pow(bounded_block_partitions(k, n), b);
  }

  // Least j with (j/D) n^{dn} > p_k(n), i.e. j^b n^{an} > p^b D^b.
  auto least_numerator = [&](unsigned n, std::uint64_t denom) {
    const BigInt rhs = target[n] * pow(BigInt(denom), b);
    auto exceeds = [&](const BigInt& j) { return pow(j, b) * scale[n] > rhs; };
    BigInt hi = 1;
    while (!exceeds(hi)) hi *= 2;
    BigInt lo = hi / 2;  // !exceeds(lo) unless hi == 1
    if (hi == 1) return hi;
    while (hi - lo > 1) {
      BigInt mid = (lo + hi) / 2;
      if (exceeds(mid)) hi = mid;
      else lo = mid;
    }
    return hi;
  };

  std::optional<Rational> best;
  for (std::uint64_t denom = 1; denom <= caps.denominator_cap; ++denom) {
    BigInt numerator = 0;
    for (unsigned n = 1; n <= n_max; ++n) numerator = std::max(numerator, least_numerator(n, denom));
    if (numerator > std::numeric_limits<std::int64_t>::max()) {
      throw CapExceeded("upper constant numerator exceeds 64 bits");
    }
    const Rational candidate(static_cast<std::int64_t>(numerator), static_cast<std::int64_t>(denom));
    if (!best || candidate < *best) best = candidate;
  }

  UpperConstant result{*best, n_max};
  if (d < Rational(1)) {
    while (result.termwise_onset > 0 && check_upper_bound_termwise(k, d, result.termwise_onset)) {
      --result.termwise_onset;
    }
  }
  return result;
}

}  // namespace orbitforge::partitions
