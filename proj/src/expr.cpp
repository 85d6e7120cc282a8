#include "concop/expr.hpp"

#include <json.hpp>

#include "concop/transport.hpp"

namespace concop {

namespace {

using nlohmann::json;

Op build(const json& node) {
  if (!node.is_object() || !node.contains("op"))
    throw ParseError("expression node must be an object with an \"op\" tag");
  std::string op = node["op"].get<std::string>();

  auto num = [&](const char* key) -> double {
    if (!node.contains(key))
      throw ParseError("operator \"" + op + "\" needs parameter \"" + key + "\"");
    return node[key].get<double>();
  };
  auto args = [&](size_t at_least) {
    if (!node.contains("args") || !node["args"].is_array() || node["args"].size() < at_least)
      throw ParseError("operator \"" + op + "\" needs at least " + std::to_string(at_least) +
                       " argument(s)");
    std::vector<Op> out;
    for (const json& a : node["args"]) out.push_back(build(a));
    return out;
  };

  if (op == "E1") return named_e1();
  if (op == "E2") return named_e2();
  if (op == "incr") return named_incr(num("delta"));
  if (op == "incr_pos") return named_incr_pos(num("delta"));
  if (op == "power") return named_power(num("a"));
  if (op == "const") return named_const(num("c"));
  if (op == "const_inv") return named_const_inv(num("c"));
  if (op == "survival") {
    std::string name = node.value("name", "");
    DensitySpec d = DensitySpec::gaussian();
    if (name == "gaussian")
      d = DensitySpec::gaussian();
    else if (name == "laplace")
      d = DensitySpec::laplace();
    else if (name == "subexp")
      d = DensitySpec::subexp(num("q"));
    else if (name == "cauchy")
      d = DensitySpec::cauchy(num("q"));
    else
      throw ParseError("unknown survival distribution \"" + name + "\"");
    SeedPtr base = seed_opaque(
        "surv:" + d.name(), [d](double u) { return d.survival(u); },
        [d](double y) { return d.survival_inverse(y); }, -kInf, 1.0);
    return Op::analytic({base, ArgMap::identity(), 1.0, false});
  }

  if (op == "invert") return op_invert(args(1)[0]);
  if (op == "shift") return op_shift_arg(args(1)[0], num("delta"));
  if (op == "scale") return op_scale_arg(args(1)[0], num("lambda"));
  if (op == "restrict") {
    double lo = node.value("lo", -kInf), hi = node.value("hi", kInf);
    return op_restrict(args(1)[0], Interval::make(lo, hi, std::isfinite(lo), std::isfinite(hi)));
  }
  if (op == "add" || op == "mul" || op == "psum" || op == "pprod" || op == "parallel_sum" ||
      op == "parallel_product") {
    std::vector<Op> a = args(2);
    Op acc = a[0];
    for (size_t i = 1; i < a.size(); ++i) {
      if (op == "add")
        acc = op_add(acc, a[i]);
      else if (op == "mul")
        acc = op_mul(acc, a[i]);
      else if (op == "psum" || op == "parallel_sum")
        acc = op_parallel_sum(acc, a[i]);
      else
        acc = op_parallel_product(acc, a[i]);
    }
    return acc;
  }
  if (op == "compose") {
    std::vector<Op> a = args(2);
    return op_compose(a[0], a[1]).op;
  }
  if (op == "min") return op_min(args(1));
  if (op == "max") return op_max(args(1));
  throw ParseError("unknown operator tag \"" + op + "\"");
}

}  // namespace

Op parse_expr(const std::string& json_text) {
  json node;
  try {
    node = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return build(node);
}

namespace {

json ray_to_json(const Ray& r) {
  switch (r.kind) {
    case RayKind::none: return "none";
    case RayKind::horizontal: return "horizontal";
    case RayKind::vertical: return "vertical";
    case RayKind::sloped: return json{{"sloped", r.slope}};
  }
  return "none";
}

Ray ray_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "none") return Ray::none();
    if (s == "horizontal") return Ray::horizontal();
    if (s == "vertical") return Ray::vertical();
    throw ParseError("unknown ray kind \"" + s + "\"");
  }
  if (j.is_object() && j.contains("sloped")) return Ray::sloped(j["sloped"].get<double>());
  throw ParseError("ray must be a kind string or {\"sloped\": m}");
}

}  // namespace

std::string curve_to_json(const MonoCurve& c) {
  nlohmann::ordered_json j;
  j["orientation"] = c.orientation() == Orientation::up ? "up" : "down";
  if (c.empty()) {
    j["empty"] = true;
    return j.dump();
  }
  json verts = json::array();
  for (const Vertex& v : c.vertices()) verts.push_back({v.x, v.y});
  j["vertices"] = std::move(verts);
  j["left_ray"] = ray_to_json(c.left_ray());
  j["right_ray"] = ray_to_json(c.right_ray());
  return j.dump();
}

MonoCurve curve_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Orientation o = j.value("orientation", "up") == std::string("down") ? Orientation::down
                                                                      : Orientation::up;
  if (j.value("empty", false)) return MonoCurve::empty_op(o);
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("curve JSON needs a vertices array");
  std::vector<Vertex> vs;
  for (const json& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2) throw ParseError("vertex must be [x, y]");
    vs.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  try {
    return MonoCurve::build(o, std::move(vs), ray_from_json(j.at("left_ray")),
                            ray_from_json(j.at("right_ray")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("curve JSON: ") + e.what());
  }
}

}  // namespace concop
