#pragma once

#include <vector>

#include "gaitcoach/attributes/meta.hpp"

namespace gaitcoach::attributes {

/// Built-in attributes, right before left where sided:
/// foot landing, knee lift, elbow angle, upper-body lean, back kick,
/// wrist-to-center, foot contact time, landing symmetry, strike mode,
/// wrist crossing.
const std::vector<AttributeMeta>& catalog();

const AttributeMeta* find_in_catalog(std::string_view name);

}  // namespace gaitcoach::attributes
