#pragma once

#include "alexlab/hyperbolic/geodesic.hpp"
#include "alexlab/hyperbolic/hyperplane.hpp"
#include "alexlab/hyperbolic/isometry.hpp"
#include "alexlab/hyperbolic/models.hpp"
#include "alexlab/hyperbolic/properties.hpp"
#include "alexlab/hyperbolic/transport.hpp"
#include "alexlab/moving_planes/engine.hpp"
#include "alexlab/projection/checks.hpp"
#include "alexlab/stability/sweep.hpp"
#include "alexlab/surfaces/graph.hpp"
#include "alexlab/surfaces/metrics.hpp"
#include "alexlab/surfaces/surface.hpp"
