#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "qconcur/concurrence.hpp"

namespace qconcur {

inline const char* class_tag_name(ClassTag t) {
  switch (t) {
    case ClassTag::EprPair: return "epr_pair";
    case ClassTag::GhzFull: return "ghz_full";
    case ClassTag::GhzSub: return "ghz_sub";
  }
  return "?";
}

namespace detail {

inline std::string json_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// Deterministic JSON rendering: fixed key order, 17-significant-digit
// numbers, no locale dependence. Identical reports serialize byte-identically.
inline std::string report_to_json(const ConcurrenceReport& r, int indent = 2) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string pad2 = pad + "  ";
  const std::string pad3 = pad2 + "  ";
  std::ostringstream os;
  os << pad << "{\n";
  os << pad2 << "\"class\": \"" << r.class_name << "\",\n";
  os << pad2 << "\"operator_family\": \"" << class_tag_name(r.class_tag) << "\",\n";
  os << pad2 << "\"aggregation\": \"" << aggregation_rule_name(r.aggregation_rule) << "\",\n";
  os << pad2 << "\"normalization\": " << detail::json_number(r.normalization_used) << ",\n";
  os << pad2 << "\"heuristic\": " << (r.heuristic ? "true" : "false") << ",\n";
  os << pad2 << "\"per_operator\": [";
  for (std::size_t i = 0; i < r.per_operator.size(); ++i) {
    if (i) os << ",";
    os << "\n" << pad3 << "{\"sites\": [";
    for (std::size_t s = 0; s < r.per_operator[i].first.size(); ++s) {
      if (s) os << ", ";
      os << r.per_operator[i].first[s];
    }
    os << "], \"value\": " << detail::json_number(r.per_operator[i].second) << "}";
  }
  os << "\n" << pad2 << "],\n";
  if (r.optimizer) {
    os << pad2 << "\"optimizer\": {\"seed\": " << r.optimizer->seed
       << ", \"restarts\": " << r.optimizer->restarts
       << ", \"iterations\": " << r.optimizer->iterations << ", \"best_angles\": [";
    for (std::size_t i = 0; i < r.optimizer->best_angles.size(); ++i) {
      if (i) os << ", ";
      os << detail::json_number(r.optimizer->best_angles[i]);
    }
    os << "]},\n";
  }
  os << pad2 << "\"aggregate\": " << detail::json_number(r.aggregate) << "\n";
  os << pad << "}";
  return os.str();
}

}  // namespace qconcur
