/**
 * @file json_io.hpp
 * @brief JSON (de)serialisation of boundary samples, Taylor series and
 *        diagnostic reports. Complex scalars are [re, im] pairs; sample
 *        grids are row-major with the last axis fastest, matching the
 *        in-memory layout. The seminorm family is not part of the wire
 *        format; loading installs the default family for the space kind.
 */
#pragma once

#include <json.hpp>

#include "cauchy.hpp"
#include "holomorphy.hpp"
#include "series.hpp"

namespace polydisc {

using Json = nlohmann::ordered_json;

namespace json_io {

inline Json complex_to_json(Complex v) { return Json::array({v.real(), v.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("json: expected an [re, im] pair");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

inline Json point_to_json(const CPoint& z) {
  Json a = Json::array();
  for (const auto& c : z.coords()) a.push_back(complex_to_json(c));
  return a;
}

inline CPoint point_from_json(const Json& j) {
  std::vector<Complex> c;
  for (const auto& e : j) c.push_back(complex_from_json(e));
  return CPoint(std::move(c));
}

inline Json entries_to_json(const VectorValue& v) {
  Json a = Json::array();
  for (const auto& e : v.entries()) a.push_back(complex_to_json(e));
  return a;
}

inline Json space_to_json(const SpaceDescriptor& space) {
  return Json{{"kind", space.kind() == SpaceDescriptor::Kind::Matrices ? "matrices"
                                                                        : "coordinates"},
              {"m", space.m()}};
}

inline SpacePtr space_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::size_t m = j.at("m").get<std::size_t>();
  if (kind == "coordinates")
    return m == 1 ? SpaceDescriptor::scalar() : SpaceDescriptor::coordinates(m);
  if (kind == "matrices") return SpaceDescriptor::matrices(m);
  throw DomainError("json: unknown space kind '" + kind + "'");
}

inline Json to_json(const BoundarySamples& samples) {
  Json j;
  j["d"] = samples.dim();
  j["center"] = point_to_json(samples.disc().center());
  j["radii"] = samples.disc().radii();
  j["nodes"] = samples.nodes();
  j["space"] = space_to_json(*samples.space());
  Json values = Json::array();
  for (const auto& v : samples.values()) values.push_back(entries_to_json(v));
  j["values"] = std::move(values);
  return j;
}

inline BoundarySamples boundary_samples_from_json(const Json& j) {
  const CPoint center = point_from_json(j.at("center"));
  const std::vector<double> radii = j.at("radii").get<std::vector<double>>();
  const std::vector<int> nodes = j.at("nodes").get<std::vector<int>>();
  SpacePtr space = space_from_json(j.at("space"));
  std::vector<VectorValue> values;
  for (const auto& entry : j.at("values")) {
    std::vector<Complex> e;
    for (const auto& c : entry) e.push_back(complex_from_json(c));
    values.push_back(VectorValue(space, std::move(e)));
  }
  return BoundarySamples(Polydisc(center, radii), nodes, std::move(values));
}

inline Json to_json(const TaylorSeries& series) {
  Json j;
  j["center"] = point_to_json(series.center());
  j["radii"] = series.radii();
  j["degree"] = series.degree();
  j["space"] = space_to_json(*series.space());
  Json coeffs = Json::array();
  for (const auto& [beta, value] : series.coefficients())
    coeffs.push_back(Json{{"beta", beta.exponents()}, {"value", entries_to_json(value)}});
  j["coefficients"] = std::move(coeffs);
  j["boundary_max"] = series.boundary_max();
  return j;
}

inline TaylorSeries taylor_series_from_json(const Json& j) {
  const CPoint center = point_from_json(j.at("center"));
  const std::vector<double> radii = j.at("radii").get<std::vector<double>>();
  const unsigned degree = j.at("degree").get<unsigned>();
  SpacePtr space = space_from_json(j.at("space"));
  std::vector<std::pair<MultiIndex, VectorValue>> coeffs;
  for (const auto& entry : j.at("coefficients")) {
    MultiIndex beta(entry.at("beta").get<std::vector<unsigned>>());
    std::vector<Complex> e;
    for (const auto& c : entry.at("value")) e.push_back(complex_from_json(c));
    coeffs.emplace_back(std::move(beta), VectorValue(space, std::move(e)));
  }
  std::map<std::string, double> boundary_max =
      j.at("boundary_max").get<std::map<std::string, double>>();
  return TaylorSeries(center, radii, degree, std::move(coeffs), std::move(boundary_max));
}

inline Json to_json(const DiagnosticReport& report) {
  Json j;
  j["verdict"] = to_string(report.verdict);
  j["residuals"] = report.residuals;
  j["resolution"] = report.resolution;
  j["witnesses"] = report.witnesses;
  j["notes"] = report.notes;
  return j;
}

}  // namespace json_io

}  // namespace polydisc
