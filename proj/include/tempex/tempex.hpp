#pragma once

// Umbrella header for the tempex library: random spanning tree models,
// temporal reachability, temporal DFS, exploration schedulers, hard-instance
// generators, closed-form predictors, exact oracles, and the experiment
// harness.

#include "tempex/backbone.hpp"
#include "tempex/errors.hpp"
#include "tempex/experiment.hpp"
#include "tempex/greedy.hpp"
#include "tempex/io.hpp"
#include "tempex/meta.hpp"
#include "tempex/model.hpp"
#include "tempex/models.hpp"
#include "tempex/mst.hpp"
#include "tempex/online.hpp"
#include "tempex/oracle.hpp"
#include "tempex/predict.hpp"
#include "tempex/reach.hpp"
#include "tempex/rng.hpp"
#include "tempex/schedule.hpp"
#include "tempex/search.hpp"
#include "tempex/stars.hpp"
#include "tempex/stats.hpp"
#include "tempex/tree.hpp"
#include "tempex/window.hpp"
