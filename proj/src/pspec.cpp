#include "coefbound/pspec.hpp"

#include <json.hpp>

namespace coefbound {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw usage_error("p_spec " + pointer + ": " + what);
}

const json& field(const json& atom, const std::string& pointer, const char* name) {
  auto it = atom.find(name);
  if (it == atom.end()) schema_error(pointer, std::string("missing field '") + name + "'");
  return *it;
}

template <Scalar S>
S scalar_field(const json& value, const std::string& pointer) {
  try {
    if constexpr (scalar_traits<S>::exact) {
      if (value.is_string()) return parse_scalar<S>(value.get<std::string>());
      if (value.is_number_integer()) return S(value.get<long long>());
      schema_error(pointer, "expected a \"p/q\" string or an integer");
    } else {
      if (value.is_number()) return value.get<double>();
      if (value.is_string()) return parse_scalar<S>(value.get<std::string>());
      schema_error(pointer, "expected a number");
    }
  } catch (const usage_error& e) {
    if (std::string_view(e.what()).starts_with("p_spec ")) throw;
    schema_error(pointer, e.what());
  }
}

// {"x_num": .., "x_den": ..} as an exact fraction
template <Scalar S>
S fraction_fields(const json& atom, const std::string& pointer, const std::string& stem) {
  const json& num = field(atom, pointer, (stem + "_num").c_str());
  const json& den = field(atom, pointer, (stem + "_den").c_str());
  if (!num.is_number_integer()) schema_error(pointer + "/" + stem + "_num", "expected an integer");
  if (!den.is_number_integer() || den.get<long long>() == 0)
    schema_error(pointer + "/" + stem + "_den", "expected a nonzero integer");
  return S(num.get<long long>()) / S(den.get<long long>());
}

const json& atoms_array(const json& doc) {
  if (!doc.is_object()) schema_error("/", "expected an object");
  auto it = doc.find("atoms");
  if (it == doc.end() || !it->is_array()) schema_error("/atoms", "expected an array");
  if (it->empty()) schema_error("/atoms", "at least one atom required");
  return *it;
}

}  // namespace

template <Scalar S>
HerglotzAtoms<S> parse_p_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw usage_error("p_spec: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }

  const json& list = atoms_array(doc);
  std::vector<HerglotzAtom<S>> atoms;
  for (std::size_t j = 0; j < list.size(); ++j) {
    const std::string at = "/atoms/" + std::to_string(j);
    const json& atom = list[j];
    if (!atom.is_object()) schema_error(at, "expected an object");
    const S weight = atom.contains("weight_num") ? fraction_fields<S>(atom, at, "weight")
                                                  : scalar_field<S>(field(atom, at, "weight"), at + "/weight");
    if constexpr (scalar_traits<S>::exact) {
      if (atom.contains("t_num")) {
        atoms.push_back(atom_at(weight, unit_from_slope(fraction_fields<S>(atom, at, "t"))));
        continue;
      }
      const json& t = field(atom, at, "t");
      if (t.is_string() && (t.get<std::string>() == "inf" || t.get<std::string>() == "infinity")) {
        atoms.push_back(atom_at(weight, Complex<S>(S(-1))));
      } else {
        atoms.push_back(atom_at(weight, unit_from_slope(scalar_field<S>(t, at + "/t"))));
      }
    } else {
      const double angle = scalar_field<S>(field(atom, at, "angle_radians"), at + "/angle_radians");
      atoms.push_back(atom_from_angle(weight, angle));
    }
  }
  try {
    return HerglotzAtoms<S>(std::move(atoms));
  } catch (const domain_error& e) {
    schema_error("/atoms", e.what());
  }
}

template <Scalar S>
std::string to_p_spec(const HerglotzAtoms<S>& p) {
  json list = json::array();
  for (const auto& atom : p.atoms()) {
    if constexpr (scalar_traits<S>::exact) {
      const bool minus_one = atom.point == Complex<S>(S(-1));
      list.push_back({{"weight", format_scalar(atom.weight)},
                      {"t", minus_one ? std::string("inf") : format_scalar(slope_from_unit(atom.point))}});
    } else {
      list.push_back({{"weight", atom.weight}, {"angle_radians", atom.angle}});
    }
  }
  return json{{"atoms", list}}.dump();
}

template HerglotzAtoms<double> parse_p_spec<double>(std::string_view);
template HerglotzAtoms<Rational> parse_p_spec<Rational>(std::string_view);
template std::string to_p_spec<double>(const HerglotzAtoms<double>&);
template std::string to_p_spec<Rational>(const HerglotzAtoms<Rational>&);

}  // namespace coefbound
