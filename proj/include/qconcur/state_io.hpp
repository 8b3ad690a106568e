#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qconcur/common.hpp"
#include "qconcur/states.hpp"

namespace qconcur {

using StateFile = std::variant<PureState, Ensemble>;

namespace detail {

// Decimal with 17 significant digits, enough to round-trip any double.
inline std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_amplitudes(std::ostream& os, const std::vector<Complex>& amps,
                             const std::string& indent) {
  os << "[";
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i) os << ",";
    os << "\n" << indent << "[" << number(amps[i].real()) << ", " << number(amps[i].imag()) << "]";
  }
  os << "\n" << indent.substr(2) << "]";
}

inline std::vector<Complex> parse_amplitudes(const nlohmann::json& j, int qubits) {
  if (!j.is_array()) throw ParseError("state file: 'amplitudes' must be an array");
  if (j.size() != static_cast<std::size_t>(1) << qubits)
    throw ParseError("state file: expected 2^" + std::to_string(qubits) + " amplitudes, found " +
                     std::to_string(j.size()));
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ParseError("state file: each amplitude must be a [re, im] number pair");
    amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return amps;
}

}  // namespace detail

inline void save_state(const PureState& psi, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ParseError("save_state: cannot open '" + path + "' for writing");
  os << "{\n  \"kind\": \"pure\",\n  \"qubits\": " << psi.qubit_count << ",\n  \"amplitudes\": ";
  detail::write_amplitudes(os, psi.amplitudes, "    ");
  os << "\n}\n";
}

inline void save_state(const Ensemble& e, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ParseError("save_state: cannot open '" + path + "' for writing");
  os << "{\n  \"kind\": \"ensemble\",\n  \"qubits\": " << e.qubit_count() << ",\n  \"members\": [";
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    if (i) os << ",";
    os << "\n    {\n      \"weight\": " << detail::number(e.members[i].weight)
       << ",\n      \"amplitudes\": ";
    detail::write_amplitudes(os, e.members[i].state.amplitudes, "        ");
    os << "\n    }";
  }
  os << "\n  ]\n}\n";
}

inline void save_state(const StateFile& s, const std::string& path) {
  std::visit([&](const auto& v) { save_state(v, path); }, s);
}

// Parses the flat explicit-amplitude format written by save_state. Malformed
// content raises ParseError; norm or weight violations surface as
// ContractViolation from the state constructors.
inline StateFile load_state(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("load_state: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("load_state: '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("load_state: missing string field 'kind'");
  if (!j.contains("qubits") || !j["qubits"].is_number_integer())
    throw ParseError("load_state: missing integer field 'qubits'");
  const int qubits = j["qubits"].get<int>();
  if (qubits < 1 || qubits > 12) throw ParseError("load_state: 'qubits' must be in 1..12");

  const std::string kind = j["kind"].get<std::string>();
  if (kind == "pure") {
    if (!j.contains("amplitudes")) throw ParseError("load_state: pure state needs 'amplitudes'");
    return PureState(qubits, detail::parse_amplitudes(j["amplitudes"], qubits));
  }
  if (kind == "ensemble") {
    if (!j.contains("members") || !j["members"].is_array() || j["members"].empty())
      throw ParseError("load_state: ensemble needs a non-empty 'members' array");
    std::vector<Ensemble::Member> members;
    for (const auto& mj : j["members"]) {
      if (!mj.is_object() || !mj.contains("weight") || !mj["weight"].is_number() ||
          !mj.contains("amplitudes"))
        throw ParseError("load_state: each member needs 'weight' and 'amplitudes'");
      members.push_back({mj["weight"].get<double>(),
                         PureState(qubits, detail::parse_amplitudes(mj["amplitudes"], qubits))});
    }
    return Ensemble(std::move(members));
  }
  throw ParseError("load_state: unknown kind '" + kind + "' (expected \"pure\" or \"ensemble\")");
}

}  // namespace qconcur
