#include "siegel/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace siegel {

namespace {

std::string fmt15(double v) {
  if (std::abs(v) < 1e-300) v = 0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

std::string exact_string(const CycNumber& x) {
  std::string s = std::to_string(x.level()) + ":";
  const auto& c = x.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].get_str();
  }
  return s;
}

CycNumber parse_exact(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("exact value '" + s + "': missing level");
  long long L = std::stoll(s.substr(0, colon));
  std::vector<Rational> c;
  std::stringstream ss(s.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Rational r;
    if (r.set_str(tok, 10) != 0) throw std::invalid_argument("exact value '" + s + "': bad coefficient");
    r.canonicalize();
    c.push_back(r);
  }
  return CycNumber::from_coeffs(L, std::move(c));
}

std::string approx_string(const CycNumber& x) {
  auto z = x.approx();
  double tiny = 1e-12 * std::max(1.0, std::abs(z));
  double re = std::abs(z.real()) < tiny ? 0.0 : z.real();
  double im = std::abs(z.imag()) < tiny ? 0.0 : z.imag();
  std::string s = fmt15(re);
  if (im != 0) s += (im > 0 ? "+" : "") + fmt15(im) + "i";
  return s;
}

json to_json(const CycNumber& x) {
  return json{{"exact", exact_string(x)}, {"text", x.to_string()}, {"approx", approx_string(x)}};
}

CycNumber cyc_from_json(const json& j) { return parse_exact(j.at("exact").get<std::string>()); }

json to_json(const IntMatrix& m) { return m.to_strings(); }

json to_json(const VerifyReport& r) {
  json j{{"identity", r.identity}, {"applicable", r.applicable}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  json inst = json::object();
  for (const auto& [name, m] : r.instance) inst[name] = to_json(m);
  j["instance"] = inst;
  json par = json::object();
  for (const auto& [name, v] : r.parameters) par[name] = v;
  j["parameters"] = par;
  if (r.lhs) j["lhs"] = to_json(*r.lhs);
  if (r.rhs) j["rhs"] = to_json(*r.rhs);
  json claims = json::object();
  for (const auto& [name, ok] : r.claims) claims[name] = ok;
  if (!claims.empty()) j["claims"] = claims;
  j["passed"] = r.passed();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string s;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ",";
    s += csv_field(fields[i]);
  }
  return s;
}

std::vector<std::string> parse_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace siegel
