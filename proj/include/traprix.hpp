#pragma once

#include "traprix/build.hpp"
#include "traprix/coverage_tree.hpp"
#include "traprix/depth_verifier.hpp"
#include "traprix/error.hpp"
#include "traprix/experiment.hpp"
#include "traprix/geometry.hpp"
#include "traprix/path_verifier.hpp"
#include "traprix/random.hpp"
#include "traprix/rational.hpp"
#include "traprix/scenarios.hpp"
#include "traprix/scene_io.hpp"
#include "traprix/trapezoidal_map.hpp"
