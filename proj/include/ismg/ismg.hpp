/// @file ismg.hpp
/// Umbrella header for the whole library.

#pragma once

#include "bench.hpp"
#include "config.hpp"
#include "coarsening.hpp"
#include "cycles.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "log.hpp"
#include "metrics.hpp"
#include "projection.hpp"
#include "smoother.hpp"
