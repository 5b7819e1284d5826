#include "arithdyn/qpoly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace arithdyn::qpoly {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  QPoly rem = a;
  trim(rem);
  const int da = degree(rem);
  if (da < db) return {QPoly{}, rem};
  QPoly quot(da - db + 1);
  const Rational lead = b[db];
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    const Rational c = rem[i] / lead;
    quot[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
  }
  trim(quot);
  trim(rem);
  return {quot, rem};
}

void reduce_monic(QPoly& a, const QPoly& monic) {
  const int dm = degree(monic);
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    if (a[i] == 0) continue;
    const Rational c = a[i];
    for (int j = 0; j <= dm; ++j) a[i - dm + j] -= c * monic[j];
  }
  if (a.size() > static_cast<std::size_t>(dm)) a.resize(dm);
}

QPoly inverse_mod(const QPoly& a, const QPoly& m) {
  // Extended Euclid tracking only the coefficient of a.
  QPoly r0 = m, r1 = a, s0{}, s1{Rational(1)};
  trim(r1);
  while (degree(r1) > 0) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r1) < 0) throw std::domain_error("element is not invertible");
  const Rational c = r1[0];
  for (auto& x : s1) x /= c;
  return divmod(s1, m).second;
}

const QPoly& cyclotomic(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic polynomial needs N >= 1");
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<const QPoly>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  QPoly num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (auto d : divisors(n)) {
    if (d == n) continue;
    num = divmod(num, cyclotomic(d)).first;
  }
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(n, std::make_unique<const QPoly>(std::move(num)));
  return *it->second;
}

}  // namespace arithdyn::qpoly
