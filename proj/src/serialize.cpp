#include "arithdyn/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace arithdyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json exact_or_null(const std::optional<LogCombination>& c) {
  return c ? Json(c->to_string()) : Json(nullptr);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_double(v).c_str(), nullptr);
}

Json to_json(const HeightResult& h) {
  Json out;
  out["value"] = json_number(h.value);
  out["error"] = json_number(h.error_radius);
  out["exact"] = exact_or_null(h.exact);
  Json locals = Json::array();
  for (const auto& l : h.locals) {
    Json item;
    item["place"] = to_string(l.place);
    item["value"] = json_number(l.value);
    item["error"] = json_number(l.radius);
    item["exact"] = exact_or_null(l.exact);
    item["iterations"] = l.iterations;
    locals.push_back(std::move(item));
  }
  out["locals"] = std::move(locals);
  return out;
}

Json to_json(const EscapeWitness& w) {
  return std::visit([](const auto& e) { return to_json(Witness{e}); }, w);
}

Json to_json(const Witness& w) {
  Json out;
  out["type"] = witness_name(w);
  std::visit(overloaded{
                 [&](const ArchimedeanEscape& e) {
                   out["iteration"] = e.iteration;
                   out["radius"] = json_number(e.radius);
                   out["embedding"] = e.embedding;
                   out["point"] = to_string(e.point);
                 },
                 [&](const ValuationEscape& e) {
                   out["prime"] = to_string(e.prime);
                   out["iteration"] = e.iteration;
                   out["valuation"] = e.valuation;
                   out["threshold"] = to_string(e.threshold);
                   out["point"] = to_string(e.point);
                 },
                 [&](const ConstantCoordinateEscapes& e) {
                   out["index"] = e.index;
                   out["escape"] = to_json(e.escape);
                 },
                 [&](const NoLinearFactor& e) { out["index"] = e.index; },
                 [&](const CommutationFails& e) {
                   out["index"] = e.index;
                   out["tau"] = to_string(e.tau);
                 },
                 [&](const NonTorsionTranslate& e) {
                   out["index"] = e.index;
                   out["gamma_power"] = to_string(e.gamma_power);
                 },
             },
             w);
  return out;
}

Json to_json(const Verdict& v) {
  Json out;
  std::visit(overloaded{
                 [&](const Preperiodic& p) {
                   out["verdict"] = "Preperiodic";
                   out["preperiod"] = p.preperiod;
                   out["period"] = p.period;
                 },
                 [&](const NotPreperiodic& n) {
                   out["verdict"] = "NotPreperiodic";
                   out["witness"] = to_json(n.witness);
                 },
                 [&](const Unknown& u) {
                   out["verdict"] = "Unknown";
                   out["reason"] = u.reason;
                   out["budget"] = u.budget;
                 },
             },
             v);
  return out;
}

Json to_json(const SymmetryGroup& g) {
  Json out;
  out["center"] = to_string(g.center);
  if (g.order) {
    out["order"] = *g.order;
  } else {
    out["order"] = "infinite";
  }
  return out;
}

Json to_json(const SameJuliaResult& r) {
  Json out;
  out["same_julia"] = r.yes();
  if (r.tau) {
    out["tau"] = to_string(*r.tau);
  } else {
    out["reason"] = to_string(r.reason);
  }
  return out;
}

}  // namespace arithdyn
