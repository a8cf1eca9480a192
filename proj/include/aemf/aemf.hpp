#pragma once

#include "aemf/affine.hpp"
#include "aemf/breakpoints.hpp"
#include "aemf/concave.hpp"
#include "aemf/cut.hpp"
#include "aemf/deviation.hpp"
#include "aemf/errors.hpp"
#include "aemf/evaluate.hpp"
#include "aemf/generators.hpp"
#include "aemf/graph.hpp"
#include "aemf/instance.hpp"
#include "aemf/io.hpp"
#include "aemf/max_flow.hpp"
#include "aemf/oracles.hpp"
#include "aemf/parametric.hpp"
#include "aemf/poly.hpp"
#include "aemf/rational.hpp"
#include "aemf/solve.hpp"
#include "aemf/solvers.hpp"
#include "aemf/verify.hpp"
