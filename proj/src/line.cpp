#include "arithdyn/line.hpp"

#include <stdexcept>

namespace arithdyn {

SplitPolynomialMap::SplitPolynomialMap(std::vector<Polynomial> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw std::invalid_argument("split map needs at least one coordinate");
  const int d = maps_.front().degree();
  if (d < 2) throw std::invalid_argument("split map needs degree >= 2");
  for (const auto& f : maps_) {
    if (f.conductor() != maps_.front().conductor()) throw ConductorMismatch(maps_.front().conductor(), f.conductor());
    if (f.degree() != d) {
      throw std::invalid_argument("split map coordinates must share one degree (got " + std::to_string(d) + " and " +
                                  std::to_string(f.degree()) + ")");
    }
  }
}

std::vector<CycloNumber> SplitPolynomialMap::operator()(const std::vector<CycloNumber>& point) const {
  if (point.size() != maps_.size()) throw std::invalid_argument("point dimension mismatch");
  std::vector<CycloNumber> out;
  out.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out.push_back(maps_[i](point[i]));
  return out;
}

Line::Line(std::vector<CycloNumber> base, std::vector<CycloNumber> direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  if (base_.empty() || base_.size() != direction_.size()) throw std::invalid_argument("line dimension mismatch");
  bool any = false;
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (base_[i].conductor() != base_[0].conductor()) throw ConductorMismatch(base_[0].conductor(), base_[i].conductor());
    if (direction_[i].conductor() != base_[0].conductor()) {
      throw ConductorMismatch(base_[0].conductor(), direction_[i].conductor());
    }
    any = any || !direction_[i].is_zero();
  }
  if (!any) throw std::invalid_argument("line direction must be nonzero");
}

std::vector<CycloNumber> Line::at(const CycloNumber& t) const {
  std::vector<CycloNumber> out;
  out.reserve(base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i) out.push_back(base_[i] + t * direction_[i]);
  return out;
}

Line Line::normalized() const {
  std::size_t j = 0;
  while (direction_[j].is_zero()) ++j;
  const CycloNumber inv = direction_[j].inverse();
  const CycloNumber shift = base_[j] * inv;
  std::vector<CycloNumber> base, dir;
  for (std::size_t i = 0; i < base_.size(); ++i) {
    dir.push_back(direction_[i] * inv);
    base.push_back(base_[i] - shift * direction_[i]);
  }
  return Line(std::move(base), std::move(dir));
}

bool operator==(const Line& a, const Line& b) {
  if (a.dimension() != b.dimension() || a.conductor() != b.conductor()) return false;
  const Line na = a.normalized(), nb = b.normalized();
  return na.base_ == nb.base_ && na.direction_ == nb.direction_;
}

}  // namespace arithdyn
