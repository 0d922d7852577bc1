#ifndef CHMP_CHMP_HPP
#define CHMP_CHMP_HPP

#include "chmp/bench.hpp"
#include "chmp/classifier.hpp"
#include "chmp/instance_io.hpp"
#include "chmp/instances.hpp"
#include "chmp/lp_feasibility.hpp"
#include "chmp/simplex_projection.hpp"
#include "chmp/solvers.hpp"

#endif  // CHMP_CHMP_HPP
