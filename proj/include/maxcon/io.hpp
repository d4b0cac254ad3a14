#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "maxcon/geometry.hpp"
#include "maxcon/ideal_formulas.hpp"
#include "maxcon/influence.hpp"
#include "maxcon/oracle.hpp"
#include "maxcon/solvers.hpp"

namespace maxcon {

using Json = nlohmann::json;

/// Malformed input documents (bad JSON, missing fields, invalid values).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// IdealSpec: {"n":7,"p":2,"upper_zeros":["1010111"]}

inline Json to_json(const IdealSpec& spec) {
  Json zeros = Json::array();
  for (const auto& z : spec.upper_zeros) zeros.push_back(z.str());
  return Json{{"n", spec.n}, {"p", spec.p}, {"upper_zeros", zeros}};
}

inline IdealSpec ideal_spec_from_json(const Json& j) {
  try {
    IdealSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    spec.p = j.at("p").get<std::size_t>();
    for (const auto& z : j.at("upper_zeros")) spec.upper_zeros.push_back(PointSet::parse(z.get<std::string>()));
    spec.validate();
    return spec;
  } catch (const Json::exception& e) {
    throw DataError(std::string("ideal spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

// InfluenceVector: {"mode":"exact","values":[9,31,...]}; unestimated entries are null.

inline Json to_json(const InfluenceVector& vec) {
  Json values = Json::array();
  for (std::size_t i = 0; i < vec.values.size(); ++i) {
    if (!vec.has(i)) {
      values.push_back(nullptr);
    } else if (vec.mode == InfluenceVector::Mode::exact) {
      values.push_back(static_cast<std::uint64_t>(vec.values[i]));
    } else {
      values.push_back(vec.values[i]);
    }
  }
  return Json{{"mode", to_string(vec.mode)}, {"values", values}};
}

inline InfluenceVector influence_from_json(const Json& j) {
  try {
    InfluenceVector vec;
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "exact") {
      vec.mode = InfluenceVector::Mode::exact;
    } else if (mode == "sampled") {
      vec.mode = InfluenceVector::Mode::sampled;
    } else {
      throw DataError("influence vector: unknown mode '" + mode + "'");
    }
    for (const auto& v : j.at("values")) {
      vec.values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
    }
    vec.n = vec.values.size();
    return vec;
  } catch (const Json::exception& e) {
    throw DataError(std::string("influence vector: ") + e.what());
  }
}

// Dataset: {"dim":8,"epsilon":0.1,"points":[{"a":[...],"b":0.93,"label":"in"|"out"|null}]}

inline Json to_json(const Dataset& data) {
  Json pts = Json::array();
  for (const auto& pt : data.points) {
    Json label = nullptr;
    if (pt.label) label = *pt.label == Label::inlier ? "in" : "out";
    pts.push_back(Json{{"a", pt.a}, {"b", pt.b}, {"label", label}});
  }
  return Json{{"dim", data.dim}, {"epsilon", data.epsilon}, {"points", pts}};
}

inline Dataset dataset_from_json(const Json& j) {
  try {
    Dataset data;
    data.dim = j.at("dim").get<std::size_t>();
    data.epsilon = j.at("epsilon").get<double>();
    for (const auto& p : j.at("points")) {
      DataPoint pt;
      pt.a = p.at("a").get<std::vector<double>>();
      pt.b = p.at("b").get<double>();
      if (p.contains("label") && !p.at("label").is_null()) {
        const auto l = p.at("label").get<std::string>();
        if (l == "in") {
          pt.label = Label::inlier;
        } else if (l == "out") {
          pt.label = Label::outlier;
        } else {
          throw DataError("dataset: label must be \"in\", \"out\" or null");
        }
      }
      data.points.push_back(std::move(pt));
    }
    data.validate();
    return data;
  } catch (const Json::exception& e) {
    throw DataError(std::string("dataset: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

inline Json to_json(const SolveReport& r) {
  return Json{{"method", to_string(r.method)},
              {"solution", r.solution.str()},
              {"consensus_size", r.consensus_size},
              {"iterations", r.iterations},
              {"removed_sequence", r.removed_sequence},
              {"oracle_queries", r.oracle_queries},
              {"termination_queries", r.termination_queries},
              {"expansion_queries", r.expansion_queries},
              {"wall_time", r.wall_time},
              {"partial", r.partial}};
}

inline SolveReport solve_report_from_json(const Json& j) {
  try {
    SolveReport r;
    r.method = parse_method(j.at("method").get<std::string>());
    r.solution = PointSet::parse(j.at("solution").get<std::string>());
    r.consensus_size = j.at("consensus_size").get<std::size_t>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.removed_sequence = j.at("removed_sequence").get<std::vector<std::size_t>>();
    r.oracle_queries = j.at("oracle_queries").get<std::uint64_t>();
    r.termination_queries = j.value("termination_queries", std::uint64_t{0});
    r.expansion_queries = j.value("expansion_queries", std::uint64_t{0});
    r.wall_time = j.at("wall_time").get<double>();
    r.partial = j.value("partial", false);
    return r;
  } catch (const Json::exception& e) {
    throw DataError(std::string("solve report: ") + e.what());
  }
}

inline Json to_json(const SpecVerification& v) {
  Json pseudo = Json::array();
  for (const auto& a : v.pseudo) pseudo.push_back(a.str());
  Json pts = Json::array();
  for (std::size_t i = 0; i < v.points.size(); ++i) {
    const auto& p = v.points[i];
    pts.push_back(Json{{"index", i},
                       {"cell", p.cell.str()},
                       {"formula", static_cast<std::int64_t>(p.formula)},
                       {"enumeration", p.enumeration},
                       {"match", p.match}});
  }
  return Json{{"spec", to_json(v.spec)},
              {"ideal", v.ideal},
              {"pseudo_upper_zeros", pseudo},
              {"points", pts},
              {"all_match", v.all_match()}};
}

/// index,b,residual,label for every point under theta.
inline void write_residuals_csv(std::ostream& os, const Dataset& data, const std::vector<double>& theta) {
  os << "index,b,residual,label\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& pt = data.points[i];
    os << i << ',' << pt.b << ',' << residual(theta, pt) << ','
       << (pt.label ? (*pt.label == Label::inlier ? "in" : "out") : "") << '\n';
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError("'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace maxcon
