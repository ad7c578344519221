#pragma once

#include "stagwalk/circuit.hpp"
#include "stagwalk/ctqw.hpp"
#include "stagwalk/errors.hpp"
#include "stagwalk/experiments.hpp"
#include "stagwalk/graph.hpp"
#include "stagwalk/io.hpp"
#include "stagwalk/rng.hpp"
#include "stagwalk/search.hpp"
#include "stagwalk/stats.hpp"
#include "stagwalk/tessellation.hpp"
#include "stagwalk/walk.hpp"
