#include "cbop/spec_io.hpp"

#include <json.hpp>

namespace cbop::io {

using nlohmann::json;

namespace {

// Exact value of a JSON scalar: strings go through the decimal parser,
// integers are taken as is, other numbers through their shortest text form.
Rational exact_value(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return parse_rational(v.dump());
  if (v.is_number_float()) return parse_rational(v.dump());
  fail(ErrorKind::Input, where + ": expected a number or a decimal string");
}

Real real_value(const json& v, const std::string& where) { return to_real(exact_value(v, where)); }

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Input, where + ": missing \"" + key + "\"");
  return *it;
}

measure::Measure parse_measure(const json& m, const std::string& name, std::optional<measure::Potential>& pot) {
  if (!m.is_object()) fail(ErrorKind::Input, name + ": expected an object");
  const json& type = member(m, "type", name);
  if (!type.is_string()) fail(ErrorKind::Input, name + ": \"type\" must be a string");
  const std::string t = type.get<std::string>();
  if (t == "discrete") {
    const json& atoms = member(m, "atoms", name);
    if (!atoms.is_array() || atoms.empty()) fail(ErrorKind::Input, name + ": \"atoms\" must be a non-empty array");
    std::vector<measure::Atom<Rational>> out;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const std::string where = name + ".atoms[" + std::to_string(k) + "]";
      if (!atoms[k].is_object()) fail(ErrorKind::Input, where + ": expected an object");
      out.push_back({exact_value(member(atoms[k], "x", where), where + ".x"),
                     exact_value(member(atoms[k], "w", where), where + ".w")});
    }
    return measure::DiscreteMeasure<Rational>(std::move(out));
  }
  if (t == "density") {
    const json& sup = member(m, "support", name);
    if (!sup.is_array() || sup.size() != 2) fail(ErrorKind::Input, name + ": \"support\" must be [a, b]");
    const Real a = real_value(sup[0], name + ".support"), b = real_value(sup[1], name + ".support");
    measure::Potential U;
    if (auto it = m.find("potential"); it != m.end()) {
      const json& c = member(*it, "coeffs", name + ".potential");
      if (!c.is_array()) fail(ErrorKind::Input, name + ".potential.coeffs must be an array");
      for (const json& v : c) U.coeffs.push_back(real_value(v, name + ".potential.coeffs"));
      if (auto h = it->find("hbar"); h != it->end()) U.hbar = real_value(*h, name + ".potential.hbar");
    }
    int order = 48;
    if (auto it = m.find("quadrature"); it != m.end()) {
      if (auto r = it->find("rule"); r != it->end() && (!r->is_string() || r->get<std::string>() != "gauss-legendre"))
        fail(ErrorKind::Input, name + ": only the gauss-legendre quadrature rule is supported");
      if (auto o = it->find("order"); o != it->end()) {
        if (!o->is_number_integer() || o->get<long>() < 2 || o->get<long>() > 4096)
          fail(ErrorKind::Input, name + ".quadrature.order must be an integer in [2, 4096]");
        order = o->get<int>();
      }
    }
    measure::DensityMeasure dm = measure::DensityMeasure::from_potential(a, b, U, order);
    measure::discretize(dm);  // validates the support and the density on the nodes
    pot = U;
    return dm;
  }
  fail(ErrorKind::Input, name + ": unknown measure type \"" + t + "\"");
}

}  // namespace

bool ProblemSpec::discrete() const {
  return std::holds_alternative<measure::DiscreteMeasure<Rational>>(alpha) &&
         std::holds_alternative<measure::DiscreteMeasure<Rational>>(beta);
}

ProblemSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Input, "spec must be a JSON object");
  ProblemSpec s{measure::DiscreteMeasure<Rational>{}, measure::DiscreteMeasure<Rational>{}, std::nullopt,
                std::nullopt};
  s.alpha = parse_measure(member(doc, "alpha", "spec"), "alpha", s.alpha_potential);
  s.beta = parse_measure(member(doc, "beta", "spec"), "beta", s.beta_potential);
  return s;
}

measure::DiscreteMeasure<Real> float_atoms(const measure::Measure& m) {
  if (const auto* d = std::get_if<measure::DiscreteMeasure<Rational>>(&m)) return measure::to_float(*d);
  return measure::discretize(std::get<measure::DensityMeasure>(m));
}

const measure::DiscreteMeasure<Rational>& exact_atoms(const measure::Measure& m) {
  const auto* d = std::get_if<measure::DiscreteMeasure<Rational>>(&m);
  if (!d) fail(ErrorKind::Input, "exact mode requires discrete measures with rational atoms");
  return *d;
}

}  // namespace cbop::io
