#pragma once

#include "lonet/version.hpp"
#include "lonet/rng.hpp"
#include "lonet/nk_model.hpp"
#include "lonet/neighborhood.hpp"
#include "lonet/basin.hpp"
#include "lonet/lon.hpp"
#include "lonet/graph.hpp"
#include "lonet/mllon.hpp"
#include "lonet/metrics.hpp"
#include "lonet/io.hpp"
#include "lonet/sweep.hpp"
