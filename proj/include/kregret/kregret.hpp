#pragma once

#include "kregret/arrangement.hpp"
#include "kregret/contour2d.hpp"
#include "kregret/dataset.hpp"
#include "kregret/dualgeom.hpp"
#include "kregret/errors.hpp"
#include "kregret/evaluator.hpp"
#include "kregret/greedy.hpp"
#include "kregret/report.hpp"
#include "kregret/sweep2d.hpp"
