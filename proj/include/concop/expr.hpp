#pragma once

#include <string>

#include "concop/op.hpp"

namespace concop {

// Operator expression format consumed by the CLI: a JSON tree
//   {"op": "psum", "args": [{"op": "E2"}, {"op": "incr", "delta": 1.5}]}
// with tags add, mul, psum, pprod, compose, min, max, invert, restrict,
// shift, scale, incr, incr_pos, power, E1, E2, const, const_inv, survival.
// parallel_sum / parallel_product are accepted as aliases.
Op parse_expr(const std::string& json_text);  // throws ParseError

// Curve serialization: {"orientation", "vertices": [[x, y], ...],
// "left_ray", "right_ray"} with rays "none" | "horizontal" | "vertical" |
// {"sloped": m}; the empty operator serializes as {"empty": true, ...}.
std::string curve_to_json(const MonoCurve& c);
MonoCurve curve_from_json(const std::string& json_text);  // throws ParseError

}  // namespace concop
