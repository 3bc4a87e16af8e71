#pragma once

// The p_spec document: a Herglotz generator on disk.
//
//   float:     {"atoms": [{"weight": 0.5, "angle_radians": 3.14159}]}
//   rational:  {"atoms": [{"weight": "1/2", "t": "1/3"}]}
//              (or integer fields weight_num, weight_den, t_num, t_den)
//
// Rational points use x = ((1 - t^2) + 2ti)/(1 + t^2); "t": "inf" is x = -1.

#include <string>
#include <string_view>

#include "coefbound/caratheodory.hpp"

namespace coefbound {

/// Throws usage_error naming the byte offset (syntax) or JSON pointer (schema)
/// of the problem, including weights that do not sum to 1.
template <Scalar S>
HerglotzAtoms<S> parse_p_spec(std::string_view text);

/// Compact one-line document; parse_p_spec reproduces the atoms exactly.
template <Scalar S>
std::string to_p_spec(const HerglotzAtoms<S>& p);

}  // namespace coefbound
