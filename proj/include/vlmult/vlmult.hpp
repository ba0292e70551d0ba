#ifndef VLMULT_VLMULT_HPP
#define VLMULT_VLMULT_HPP

#include "vlmult/config.hpp"
#include "vlmult/corpus.hpp"
#include "vlmult/cubes.hpp"
#include "vlmult/experiments.hpp"
#include "vlmult/exponents.hpp"
#include "vlmult/grid.hpp"
#include "vlmult/maximal.hpp"
#include "vlmult/norms.hpp"
#include "vlmult/operators.hpp"
#include "vlmult/report.hpp"
#include "vlmult/symbol.hpp"
#include "vlmult/weights.hpp"

#endif  // VLMULT_VLMULT_HPP
