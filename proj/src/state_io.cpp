#include "ksep/state_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ksep {

namespace {

using nlohmann::json;

[[noreturn]] void syntax(const std::string& what) { fail(ErrorKind::syntax, what); }

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) syntax(std::string("missing field \"") + key + "\"");
  return *it;
}

int read_width(const json& obj) {
  const json& n = field(obj, "n");
  if (!n.is_number_integer()) syntax("field \"n\" must be an integer");
  const auto value = n.get<long long>();
  if (value < 1 || value > kMaxQubits) syntax("field \"n\" must be in [1, 63]");
  return static_cast<int>(value);
}

double read_real(const json& v, const char* what) {
  if (!v.is_number()) syntax(std::string(what) + " must be a number");
  return v.get<double>();
}

Mask read_bits(const json& v, int n) {
  if (!v.is_string()) syntax("basis label must be a bit string");
  const auto& s = v.get_ref<const std::string&>();
  if (static_cast<int>(s.size()) != n) {
    syntax("bit string \"" + s + "\" must have exactly " + std::to_string(n) + " characters");
  }
  return BasisState::from_string(s).bits();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    syntax(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

StateSource parse_state_file(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) syntax("state file must hold a single JSON object");
  const json& kind_field = field(doc, "kind");
  if (!kind_field.is_string()) syntax("field \"kind\" must be a string");
  const auto& kind = kind_field.get_ref<const std::string&>();
  const int n = read_width(doc);

  if (kind == "dicke_noise") {
    const json& m = field(doc, "m");
    if (!m.is_number_integer()) syntax("field \"m\" must be an integer");
    return NoiseFamily(dicke_state(n, m.get<int>()));
  }

  if (kind == "pure_noise") {
    const json& list = field(doc, "amplitudes");
    if (!list.is_array()) syntax("field \"amplitudes\" must be an array");
    std::vector<Amplitude> amps;
    amps.reserve(list.size());
    for (const auto& item : list) {
      if (!item.is_array() || item.size() != 3) syntax("amplitude must be [\"bits\", re, im]");
      amps.push_back({read_bits(item[0], n), Complex(read_real(item[1], "re"), read_real(item[2], "im"))});
    }
    return NoiseFamily(PureState(n, std::move(amps)));
  }

  if (kind == "density") {
    const json& list = field(doc, "entries");
    if (!list.is_array()) syntax("field \"entries\" must be an array");
    std::vector<MatrixEntry> entries;
    entries.reserve(list.size());
    for (const auto& item : list) {
      if (!item.is_array() || item.size() != 4) syntax("entry must be [\"rowbits\", \"colbits\", re, im]");
      entries.push_back({read_bits(item[0], n), read_bits(item[1], n),
                         Complex(read_real(item[2], "re"), read_real(item[3], "im"))});
    }
    return DensityMatrix::from_entries(n, std::move(entries));
  }

  syntax("unknown state kind \"" + kind + "\"");
}

std::vector<BasisState> parse_basis_file(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) syntax("basis file must hold a single JSON object");
  const int n = read_width(doc);
  const json& list = field(doc, "states");
  if (!list.is_array()) syntax("field \"states\" must be an array");
  std::vector<BasisState> states;
  for (const auto& item : list) states.emplace_back(n, read_bits(item, n));
  return states;
}

std::string density_to_state_json(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  json entries = json::array();
  for (const auto& e : rho.materialize()) {
    entries.push_back({BasisState(n, e.row).to_string(), BasisState(n, e.col).to_string(), e.value.real(),
                       e.value.imag()});
  }
  json doc = json::object();
  doc["kind"] = "density";
  doc["n"] = n;
  doc["entries"] = std::move(entries);
  return doc.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ksep
