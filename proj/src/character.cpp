#include "siegel/character.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace siegel {

namespace {

std::mutex g_log_mutex;
std::map<long long, std::shared_ptr<const std::vector<long long>>> g_log_tables;

std::shared_ptr<const std::vector<long long>> log_table(long long q) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  auto it = g_log_tables.find(q);
  if (it != g_log_tables.end()) return it->second;
  auto table = std::make_shared<std::vector<long long>>(q, -1);
  long long g = primitive_root(q), x = 1;
  for (long long e = 0; e < q - 1; ++e) {
    (*table)[x] = e;
    x = x * g % q;
  }
  g_log_tables.emplace(q, table);
  return table;
}

CharComponent canonical(CharComponent c) {
  c.exponent = mod_ll(c.exponent, c.order);
  long long g = gcd_ll(c.exponent, c.order);
  if (c.exponent == 0) {
    c.order = 1;
  } else {
    c.order /= g;
    c.exponent /= g;
  }
  return c;
}

std::string trim_copy(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

long long component_generator(long long m) {
  if (m == 4) return 3;
  return primitive_root(m);
}

long long component_log(long long m, long long a) {
  long long r = mod_ll(a, m);
  if (m == 4) {
    if (r == 1) return 0;
    if (r == 3) return 1;
    throw std::invalid_argument("component_log: non-unit mod 4");
  }
  if (r == 0) throw std::invalid_argument("component_log: non-unit");
  return (*log_table(m))[r];
}

DirichletCharacter::DirichletCharacter() : modulus_(1) {}

DirichletCharacter::DirichletCharacter(long long modulus, std::vector<CharComponent> comps) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("character modulus must be positive");
  long long odd = modulus;
  bool four = false;
  if (modulus % 4 == 0) {
    four = true;
    odd = modulus / 4;
  }
  if (odd % 2 == 0 || !is_squarefree(odd))
    throw std::invalid_argument("character modulus must be 4N or N with N odd squarefree");
  std::vector<long long> moduli;
  if (four) moduli.push_back(4);
  for (long long p : prime_factors(odd)) moduli.push_back(p);
  for (const auto& c : comps) {
    if (std::find(moduli.begin(), moduli.end(), c.modulus) == moduli.end())
      throw std::invalid_argument("character component modulus " + std::to_string(c.modulus) +
                                  " does not divide " + std::to_string(modulus));
    if (c.order < 1 || euler_phi(c.modulus) % c.order != 0)
      throw std::invalid_argument("character component order must divide phi(m)");
  }
  for (long long m : moduli) {
    CharComponent comp{m, 1, 0};
    int seen = 0;
    for (const auto& c : comps)
      if (c.modulus == m) {
        comp = c;
        ++seen;
      }
    if (seen > 1) throw std::invalid_argument("duplicate character component");
    comps_.push_back(canonical(comp));
  }
}

DirichletCharacter DirichletCharacter::trivial(long long modulus) { return DirichletCharacter(modulus, {}); }

DirichletCharacter DirichletCharacter::parse(long long modulus, const std::string& spec) {
  std::vector<CharComponent> comps;
  std::string s = trim_copy(spec);
  if (s.empty() || s == "trivial") return trivial(modulus);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    auto at = item.find('@');
    if (at == std::string::npos) throw std::invalid_argument("character spec item lacks '@': " + item);
    std::string comp = trim_copy(item.substr(0, at));
    long long m = 0;
    try {
      m = std::stoll(item.substr(at + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad modulus in character spec item: " + item);
    }
    CharComponent c{m, 1, 0};
    if (comp == "trivial") {
    } else if (comp == "quadratic") {
      c.order = 2;
      c.exponent = 1;
    } else if (comp.rfind("gen^", 0) == 0) {
      auto colon = comp.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("expected gen^e:ord in " + item);
      try {
        c.exponent = std::stoll(comp.substr(4, colon - 4));
        c.order = std::stoll(comp.substr(colon + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad gen^e:ord in " + item);
      }
    } else {
      throw std::invalid_argument("unknown character component kind: " + comp);
    }
    comps.push_back(c);
  }
  return DirichletCharacter(modulus, comps);
}

bool DirichletCharacter::has_component(long long m) const {
  for (const auto& c : comps_)
    if (c.modulus == m) return true;
  return false;
}

const CharComponent& DirichletCharacter::component(long long m) const {
  for (const auto& c : comps_)
    if (c.modulus == m) return c;
  throw std::invalid_argument("character has no component at " + std::to_string(m));
}

CycNumber DirichletCharacter::component_value(long long m, const Integer& a) const {
  const CharComponent& c = component(m);
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  long long ar = r.get_si();
  if (gcd_ll(ar, m) != 1) return CycNumber(0);
  if (c.is_trivial()) return CycNumber(1);
  long long lg = component_log(m, ar);
  return CycNumber::root_of_unity(c.order, static_cast<long long>((static_cast<__int128>(lg) * c.exponent) % c.order));
}

CycNumber DirichletCharacter::eval(const Integer& a) const {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), zz(modulus_).get_mpz_t());
  if (g != 1) return CycNumber(0);
  // collect the exponent of zeta_{lcm of orders}
  long long L = 1;
  for (const auto& c : comps_) L = lcm_ll(L, c.order);
  long long e = 0;
  for (const auto& c : comps_) {
    if (c.is_trivial()) continue;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(c.modulus));
    long long lg = component_log(c.modulus, r.get_si());
    e = mod_ll(e + static_cast<long long>((static_cast<__int128>(lg) * c.exponent % c.order) * (L / c.order)), L);
  }
  return CycNumber::root_of_unity(L, e);
}

CycNumber DirichletCharacter::eval_power(const Integer& a, long long e) const {
  CycNumber v = eval(a);
  if (v.is_zero()) {
    if (e == 0) return CycNumber(1);
    throw std::domain_error("eval_power: argument is not a unit");
  }
  // chi(a) is a root of unity, so a negative power is a power of the conjugate
  return e >= 0 ? v.pow(e) : v.conj().pow(-e);
}

DirichletCharacter DirichletCharacter::restrict_to(long long m) const {
  std::vector<CharComponent> keep;
  long long mod = 1;
  for (const auto& c : comps_)
    if (m % c.modulus == 0) {
      keep.push_back(c);
      mod *= c.modulus;
    }
  return DirichletCharacter(mod, keep);
}

DirichletCharacter DirichletCharacter::power(long long e) const {
  std::vector<CharComponent> out;
  for (auto c : comps_) {
    c.exponent = static_cast<long long>((static_cast<__int128>(c.exponent) * mod_ll(e, c.order)) % c.order);
    out.push_back(c);
  }
  return DirichletCharacter(modulus_, out);
}

int DirichletCharacter::parity() const {
  CycNumber v = eval(zz(modulus_ - 1));
  if (modulus_ == 1) return 1;
  Rational r = v.rational_value();
  return r > 0 ? 1 : -1;
}

bool DirichletCharacter::is_trivial() const {
  for (const auto& c : comps_)
    if (!c.is_trivial()) return false;
  return true;
}

std::string DirichletCharacter::spec() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : comps_) {
    if (!first) os << ",";
    first = false;
    if (c.is_trivial())
      os << "trivial";
    else if (c.order == 2)
      os << "quadratic";
    else
      os << "gen^" << c.exponent << ":" << c.order;
    os << "@" << c.modulus;
  }
  if (first) os << "trivial";
  return os.str();
}

}  // namespace siegel
