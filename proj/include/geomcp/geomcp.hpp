#pragma once

#include "geomcp/asymptotics.hpp"
#include "geomcp/cost.hpp"
#include "geomcp/crops.hpp"
#include "geomcp/errors.hpp"
#include "geomcp/evaluate.hpp"
#include "geomcp/geometry.hpp"
#include "geomcp/io.hpp"
#include "geomcp/matrix.hpp"
#include "geomcp/parallel.hpp"
#include "geomcp/pelt.hpp"
#include "geomcp/pipeline.hpp"
#include "geomcp/rng.hpp"
#include "geomcp/scaling.hpp"
#include "geomcp/simulate.hpp"
#include "geomcp/stats.hpp"
