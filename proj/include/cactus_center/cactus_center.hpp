#pragma once

#include "cactus_center/error.hpp"
#include "cactus_center/graph.hpp"
#include "cactus_center/skeleton.hpp"
#include "cactus_center/model.hpp"
#include "cactus_center/envelope.hpp"
#include "cactus_center/cycle_solver.hpp"
#include "cactus_center/tree_solver.hpp"
#include "cactus_center/detect.hpp"
#include "cactus_center/reduction.hpp"
#include "cactus_center/search.hpp"
#include "cactus_center/oracle.hpp"
