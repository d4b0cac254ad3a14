#pragma once

#include "maxcon/bench.hpp"
#include "maxcon/builtin_specs.hpp"
#include "maxcon/chebyshev.hpp"
#include "maxcon/geometry.hpp"
#include "maxcon/ideal_formulas.hpp"
#include "maxcon/influence.hpp"
#include "maxcon/io.hpp"
#include "maxcon/oracle.hpp"
#include "maxcon/point_set.hpp"
#include "maxcon/rng.hpp"
#include "maxcon/solvers.hpp"
