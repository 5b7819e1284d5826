#include "arithdyn/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace arithdyn {

ConductorMismatch::ConductorMismatch(std::uint64_t a, std::uint64_t b)
    : std::invalid_argument("conductor mismatch: Q(zeta_" + std::to_string(a) + ") vs Q(zeta_" +
                            std::to_string(b) + ")") {}

CyclotomicField::CyclotomicField(std::uint64_t conductor)
    : conductor_(conductor), modulus_(&qpoly::cyclotomic(conductor)) {
  degree_ = static_cast<std::size_t>(qpoly::degree(*modulus_));
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::uint64_t conductor) {
  if (conductor == 0) throw std::invalid_argument("conductor must be >= 1");
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[conductor];
  if (!slot) slot = std::make_shared<const CyclotomicField>(conductor);
  return slot;
}

CycloNumber::CycloNumber() : CycloNumber(1, Rational(0)) {}

CycloNumber::CycloNumber(std::uint64_t conductor, const Rational& value)
    : field_(CyclotomicField::get(conductor)), coords_(field_->degree()) {
  coords_[0] = value;
}

CycloNumber CycloNumber::from_powers(std::uint64_t conductor, qpoly::QPoly powers) {
  CycloNumber out(conductor, Rational(0));
  qpoly::reduce_monic(powers, out.field_->modulus());
  for (std::size_t i = 0; i < powers.size() && i < out.coords_.size(); ++i) out.coords_[i] = powers[i];
  return out;
}

CycloNumber CycloNumber::zeta(std::uint64_t conductor, std::uint64_t k) {
  k %= conductor;
  qpoly::QPoly powers(k + 1);
  powers[k] = 1;
  return from_powers(conductor, std::move(powers));
}

bool CycloNumber::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool CycloNumber::is_one() const { return coords_[0] == 1 && is_rational(); }

bool CycloNumber::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

std::optional<Rational> CycloNumber::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return coords_[0];
}

void CycloNumber::check_same_field(const CycloNumber& o) const {
  if (field_->conductor() != o.field_->conductor()) throw ConductorMismatch(conductor(), o.conductor());
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  check_same_field(o);
  if (coords_.size() == 1) {
    coords_[0] *= o.coords_[0];
    return *this;
  }
  qpoly::QPoly prod(2 * coords_.size() - 1);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coords_.size(); ++j) prod[i + j] += coords_[i] * o.coords_[j];
  }
  qpoly::reduce_monic(prod, field_->modulus());
  prod.resize(coords_.size());
  coords_ = std::move(prod);
  return *this;
}

CycloNumber& CycloNumber::operator/=(const CycloNumber& o) { return *this *= o.inverse(); }

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_" + std::to_string(conductor()) + ")");
  if (is_rational()) return CycloNumber(conductor(), 1 / coords_[0]);
  return from_powers(conductor(), qpoly::inverse_mod(coords_, field_->modulus()));
}

CycloNumber CycloNumber::pow(std::uint64_t e) const {
  CycloNumber result(conductor(), Rational(1));
  CycloNumber base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

CycloNumber CycloNumber::lift(std::uint64_t target) const {
  if (target % conductor() != 0) {
    throw std::invalid_argument("cannot lift Q(zeta_" + std::to_string(conductor()) + ") into Q(zeta_" +
                                std::to_string(target) + ")");
  }
  if (target == conductor()) return *this;
  const std::uint64_t step = target / conductor();
  qpoly::QPoly powers((coords_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < coords_.size(); ++i) powers[i * step] = coords_[i];
  return from_powers(target, std::move(powers));
}

std::complex<double> CycloNumber::embed(std::uint64_t k) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % conductor()) / static_cast<double>(conductor());
  const std::complex<double> w = std::polar(1.0, angle);
  std::complex<double> acc = 0.0;
  for (std::size_t i = coords_.size(); i-- > 0;) acc = acc * w + coords_[i].get_d();
  return acc;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  return a.conductor() == b.conductor() && a.coords_ == b.coords_;
}

bool operator<(const CycloNumber& a, const CycloNumber& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    const int c = cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t CycloNumber::bit_size() const {
  std::size_t bits = 0;
  for (const auto& c : coords_) bits += arithdyn::bit_size(c);
  return bits;
}

std::vector<std::uint64_t> embedding_indices(std::uint64_t conductor) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k <= conductor; ++k) {
    if (std::gcd(k, conductor) == 1) out.push_back(k);
  }
  return out;
}

std::string to_string(const CycloNumber& x) {
  if (x.is_rational()) return to_string(x.coords()[0]);
  std::string out;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    Rational c = x.coords()[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string power = i == 0 ? "" : (i == 1 ? "w" : "w^" + std::to_string(i));
    if (power.empty()) {
      out += to_string(c);
    } else if (c == 1) {
      out += power;
    } else {
      out += to_string(c) + "*" + power;
    }
  }
  return out;
}

}  // namespace arithdyn
