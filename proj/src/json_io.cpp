#include "bergman/json_io.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorKind::ValidationError, fmt::format("{}: {}", path, what));
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) invalid(path, fmt::format("missing \"{}\"", key));
  return j.at(key);
}

std::string string_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_string()) invalid(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<Factor> factors_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array");
  std::vector<Factor> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = fmt::format("{}[{}]", path, i);
    require_keys(j[i], p, {"re", "im", "mult"});
    Factor f;
    f.center = complex_from_json(j[i], p);
    if (j[i].contains("mult")) {
      const Json& m = j[i]["mult"];
      if (!m.is_number_integer() || m.get<long long>() < 1 || m.get<long long>() > 1000)
        invalid(p + ".mult", "expected a positive integer");
      f.multiplicity = m.get<int>();
    }
    out.push_back(f);
  }
  return out;
}

Json factors_to_json(const std::vector<Factor>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) {
    Json j = complex_to_json(f.center);
    j["mult"] = f.multiplicity;
    out.push_back(j);
  }
  return out;
}

}  // namespace

void require_keys(const Json& j, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known |= key == a;
    if (!known) invalid(path, fmt::format("unknown key \"{}\"", key));
  }
}

double number_at(const Json& j, const char* key, const std::string& path) {
  const Json& v = member(j, key, path);
  if (!v.is_number()) invalid(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(path + "." + key, "expected a finite number");
  return x;
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected {\"re\": x, \"im\": y}");
  return {number_at(j, "re", path), number_at(j, "im", path)};
}

Json domain_to_json(const DomainSpec& d) {
  Json j;
  j["kind"] = d.is_disk() ? "disk" : "annulus";
  if (d.is_annulus()) j["inner_radius"] = d.inner_radius();
  if (!d.punctures().empty()) {
    j["punctures"] = Json::array();
    for (const auto& p : d.punctures()) j["punctures"].push_back(complex_to_json(p));
  }
  return j;
}

DomainSpec domain_from_json(const Json& j, const std::string& path) {
  require_keys(j, path, {"kind", "inner_radius", "punctures"});
  const std::string kind = string_at(j, "kind", path);
  std::vector<Complex> punctures;
  if (j.contains("punctures")) {
    const Json& ps = j["punctures"];
    if (!ps.is_array()) invalid(path + ".punctures", "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string p = fmt::format("{}.punctures[{}]", path, i);
      require_keys(ps[i], p, {"re", "im"});
      punctures.push_back(complex_from_json(ps[i], p));
    }
  }
  if (kind == "disk") {
    if (j.contains("inner_radius")) invalid(path, "a disk has no inner_radius");
    return DomainSpec::unit_disk(std::move(punctures));
  }
  if (kind == "annulus")
    return DomainSpec::annulus(number_at(j, "inner_radius", path), std::move(punctures));
  invalid(path + ".kind", fmt::format("unknown domain kind \"{}\"", kind));
}

Json weight_to_json(const WeightSpec& w) {
  Json base;
  if (w.base().is_constant()) {
    base["kind"] = "constant";
    base["value"] = w.base().scale;
  } else {
    base["kind"] = "radial";
    base["alpha"] = w.base().alpha;
    if (w.base().scale != 1.0) base["scale"] = w.base().scale;
  }
  Json j;
  j["base"] = base;
  j["zeros"] = factors_to_json(w.zeros());
  j["poles"] = factors_to_json(w.poles());
  return j;
}

WeightSpec weight_from_json(const Json& j, const std::string& path) {
  require_keys(j, path, {"base", "zeros", "poles"});
  BaseWeight base;
  if (j.contains("base")) {
    const Json& b = j["base"];
    const std::string bp = path + ".base";
    const std::string kind = string_at(b, "kind", bp);
    if (kind == "constant") {
      require_keys(b, bp, {"kind", "value"});
      base = BaseWeight::constant(number_at(b, "value", bp));
    } else if (kind == "radial") {
      require_keys(b, bp, {"kind", "alpha", "scale"});
      base = BaseWeight::radial(number_at(b, "alpha", bp));
      if (b.contains("scale")) base.scale = number_at(b, "scale", bp);
    } else {
      invalid(bp + ".kind", fmt::format("unknown base kind \"{}\"", kind));
    }
  }
  std::vector<Factor> zeros, poles;
  if (j.contains("zeros")) zeros = factors_from_json(j["zeros"], path + ".zeros");
  if (j.contains("poles")) poles = factors_from_json(j["poles"], path + ".poles");
  return WeightSpec(base, std::move(zeros), std::move(poles));
}

Json witness_to_json(const ZeroWitness& w) {
  Json j;
  j["z"] = complex_to_json(w.z);
  j["w"] = complex_to_json(w.w);
  j["residual"] = w.residual;
  j["scale"] = w.scale;
  j["winding"] = w.winding;
  j["order"] = w.order;
  return j;
}

}  // namespace bergman
