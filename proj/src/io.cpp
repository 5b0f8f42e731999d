// SPDX-License-Identifier: Apache-2.0

#include "xyq/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace xyq {

DeviceProfile default_profile() {
  DeviceProfile p;
  p.pair = default_pair();
  p.pulse = default_pulse();
  p.noise = NoiseModel::modulated_pair();
  return p;
}

namespace {

template <class T>
void read_opt(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

DeviceProfile profile_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("profile: top level must be an object");
  DeviceProfile p = default_profile();
  try {
    read_opt(j, "nu", p.pair.transmon.nu);
    read_opt(j, "phi_dc", p.pair.transmon.phi_dc);
    read_opt(j, "g_hz", p.pair.g_hz);
    if (j.contains("omega_F01_hz")) p.pair.omega_F01 = kTwoPi * j.at("omega_F01_hz").get<double>();
    read_opt(j, "sideband_n0", p.pair.sideband_n0);
    if (j.contains("transient_model")) {
      const auto m = j.at("transient_model").get<std::string>();
      if (m == "linear_switch") p.pair.model = TransientModel::linear_switch;
      else if (m == "exact") p.pair.model = TransientModel::exact;
      else throw FormatError("profile: unknown transient_model '" + m + "'");
    }
    if (j.contains("pulse")) {
      const Json& q = j.at("pulse");
      read_opt(q, "phi_ac", p.pulse.phi_ac);
      if (q.contains("f_p_hz")) p.pulse.omega_p = kTwoPi * q.at("f_p_hz").get<double>();
      read_opt(q, "phi_p", p.pulse.phi_p);
      read_opt(q, "t_rise_s", p.pulse.t_rise);
      read_opt(q, "tau_s", p.pulse.tau);
    }
    if (j.contains("frames")) {
      read_opt(j.at("frames"), "f_fixed_hz", p.f_fixed_hz);
      read_opt(j.at("frames"), "f_tunable_hz", p.f_tunable_hz);
    }
    if (j.contains("noise")) {
      const Json& n = j.at("noise");
      if (n.contains("t1_s") || n.contains("t2_s")) {
        const auto t1 = n.at("t1_s").get<std::vector<double>>();
        const auto t2 = n.at("t2_s").get<std::vector<double>>();
        if (t1.size() != t2.size()) throw FormatError("profile: t1_s and t2_s differ in length");
        p.noise.qubits.clear();
        for (std::size_t k = 0; k < t1.size(); ++k) p.noise.qubits.push_back({t1[k], t2[k]});
      }
      if (n.contains("durations_s")) p.noise.durations = n.at("durations_s").get<std::map<std::string, double>>();
      if (n.contains("depolarizing"))
        p.noise.depolarizing = n.at("depolarizing").get<std::map<std::string, double>>();
      if (n.contains("readout")) {
        const auto r = n.at("readout").get<std::vector<double>>();
        if (r.size() != 2) throw FormatError("profile: readout needs [e0, e1]");
        p.noise.readout = {r[0], r[1]};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("profile: ") + e.what());
  }
  if (p.pair.transmon.nu.empty()) throw FormatError("profile: nu must not be empty");
  if (!(p.pulse.t_rise > 0) || !(p.pulse.tau >= 0)) throw FormatError("profile: need t_rise_s > 0 and tau_s >= 0");
  try {
    p.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("profile: ") + e.what());
  }
  return p;
}

Json profile_to_json(const DeviceProfile& p) {
  Json j;
  j["nu"] = p.pair.transmon.nu;
  j["phi_dc"] = p.pair.transmon.phi_dc;
  j["g_hz"] = p.pair.g_hz;
  j["omega_F01_hz"] = p.pair.omega_F01 / kTwoPi;
  j["sideband_n0"] = p.pair.sideband_n0;
  j["transient_model"] = p.pair.model == TransientModel::exact ? "exact" : "linear_switch";
  j["pulse"] = {{"phi_ac", p.pulse.phi_ac},
                {"f_p_hz", p.pulse.omega_p / kTwoPi},
                {"phi_p", p.pulse.phi_p},
                {"t_rise_s", p.pulse.t_rise},
                {"tau_s", p.pulse.tau}};
  j["frames"] = {{"f_fixed_hz", p.f_fixed_hz}, {"f_tunable_hz", p.f_tunable_hz}};
  Json n;
  std::vector<double> t1, t2;
  for (const auto& q : p.noise.qubits) {
    t1.push_back(q.t1);
    t2.push_back(q.t2);
  }
  n["t1_s"] = t1;
  n["t2_s"] = t2;
  n["durations_s"] = p.noise.durations;
  n["depolarizing"] = p.noise.depolarizing;
  n["readout"] = {p.noise.readout[0], p.noise.readout[1]};
  j["noise"] = n;
  return j;
}

DeviceProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read profile '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("profile '" + path.string() + "': " + e.what());
  }
  return profile_from_json(j);
}

DeviceProfile resolve_profile(const std::string& explicit_path, std::string* source) {
  std::string path = explicit_path;
  if (path.empty())
    if (const char* env = std::getenv(kProfileEnv); env && *env) path = env;
  if (source) *source = path.empty() ? "builtin" : path;
  return path.empty() ? default_profile() : load_profile(path);
}

std::string profile_hash(const DeviceProfile& p) {
  const std::string s = profile_to_json(p).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  try {
    const auto n = static_cast<Eigen::Index>(j.size());
    if (n == 0) return CMatrix();
    const auto m = static_cast<Eigen::Index>(j.at(0).size());
    CMatrix out(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (static_cast<Eigen::Index>(j.at(r).size()) != m) throw FormatError("matrix: ragged rows");
      for (Eigen::Index c = 0; c < m; ++c) out(r, c) = cplx(j.at(r).at(c).at(0).get<double>(), j.at(r).at(c).at(1).get<double>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("matrix: ") + e.what());
  }
}

Json program_to_json(const PulseProgram& p) {
  Json j;
  j["space"] = p.space.dims();
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    if (const auto* f = std::get_if<FluxStep>(&s))
      steps.push_back({{"pulse", std::string(to_string(f->kind))}, {"phase", round12(f->phase)}, {"targets", f->targets}});
    else {
      const auto& r = std::get<RzFrameStep>(s);
      steps.push_back({{"rz", r.qubit}, {"angle", round12(r.angle)}});
    }
  }
  j["steps"] = steps;
  j["declared_unitary"] = matrix_to_json(p.declared_unitary);
  return j;
}

PulseProgram program_from_json(const Json& j) {
  try {
    PulseProgram p{QuditSpace(j.at("space").get<std::vector<int>>()), {}, {}};
    for (const auto& s : j.at("steps")) {
      if (s.contains("pulse")) {
        const auto name = s.at("pulse").get<std::string>();
        const auto kind = pulse_kind_from_string(name);
        if (!kind) throw FormatError("program: unknown pulse kind '" + name + "'");
        auto targets = s.at("targets").get<std::vector<int>>();
        for (int t : targets)
          if (t < 0 || t >= p.space.sites()) throw FormatError("program: target out of range");
        p.steps.push_back(FluxStep{*kind, s.at("phase").get<double>(), std::move(targets)});
      } else if (s.contains("rz")) {
        const int q = s.at("rz").get<int>();
        if (q < 0 || q >= p.space.sites()) throw FormatError("program: rz qubit out of range");
        p.steps.push_back(RzFrameStep{q, s.at("angle").get<double>()});
      } else {
        throw FormatError("program: step needs 'pulse' or 'rz'");
      }
    }
    if (j.contains("declared_unitary")) p.declared_unitary = matrix_from_json(j.at("declared_unitary"));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("program: ") + e.what());
  }
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.space.sites() << "\n";
  char buf[32];
  for (const auto& op : c.ops) {
    os << op.label;
    if (!op.params.empty()) {
      os << "(";
      for (std::size_t k = 0; k < op.params.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.12g", op.params[k]);
        os << (k ? "," : "") << buf;
      }
      os << ")";
    }
    for (int t : op.targets) os << " " << t;
    os << "\n";
  }
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  int n = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (n < 0) {
      if (head != "qubits" || !(ls >> n) || n < 1) throw FormatError("circuit: first line must be 'qubits n'");
      c.space = QuditSpace::qubits(n);
      continue;
    }
    Op op;
    const auto paren = head.find('(');
    op.label = head.substr(0, paren);
    if (paren != std::string::npos) {
      if (head.back() != ')') throw FormatError("circuit line " + std::to_string(lineno) + ": unbalanced parameters");
      std::istringstream ps(head.substr(paren + 1, head.size() - paren - 2));
      std::string tok;
      while (std::getline(ps, tok, ',')) op.params.push_back(std::stod(tok));
    }
    for (int t; ls >> t;) {
      if (t < 0 || t >= n) throw FormatError("circuit line " + std::to_string(lineno) + ": target out of range");
      op.targets.push_back(t);
    }
    if (!is_known_gate(op.label) || gate_arity(op.label) != static_cast<int>(op.targets.size()))
      throw FormatError("circuit line " + std::to_string(lineno) + ": bad op '" + op.label + "'");
    c.ops.push_back(std::move(op));
  }
  if (n < 0) throw FormatError("circuit: empty input");
  return c;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << format_double(r[k]);
    os << "\n";
  }
  write_text(path, os.str());
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json RunManifest::to_json() const {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["profile_hash"] = profile_hash;
  j["profile_source"] = profile_source;
  j["tool_version"] = kToolVersion;
  j["outputs"] = outputs;
  j["timestamp"] = stamp;
  return j;
}

}  // namespace xyq
