#pragma once

#include "advectlab/bench.hpp"
#include "advectlab/contours.hpp"
#include "advectlab/core_grid.hpp"
#include "advectlab/dg_p2.hpp"
#include "advectlab/errors.hpp"
#include "advectlab/hermite.hpp"
#include "advectlab/jet_scheme.hpp"
#include "advectlab/plot.hpp"
#include "advectlab/verify.hpp"
#include "advectlab/vec.hpp"
#include "advectlab/velocity.hpp"
#include "advectlab/weno3.hpp"
