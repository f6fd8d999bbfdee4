#pragma once

// Umbrella header for the weighted-graph curvature toolkit.

#include "graphcurv/bakry_emery.hpp"
#include "graphcurv/bounds.hpp"
#include "graphcurv/common.hpp"
#include "graphcurv/distances.hpp"
#include "graphcurv/generators.hpp"
#include "graphcurv/graph.hpp"
#include "graphcurv/graph_io.hpp"
#include "graphcurv/heat.hpp"
#include "graphcurv/resistance.hpp"
#include "graphcurv/serialize.hpp"
