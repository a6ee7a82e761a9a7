#pragma once

// Umbrella header for the wreathlab library: combinatorics of graph-wreath
// products, exact integer homology, polyhedral products, and finiteness-type
// verdicts.

#include "wreathlab/action.hpp"
#include "wreathlab/errors.hpp"
#include "wreathlab/graph.hpp"
#include "wreathlab/homology.hpp"
#include "wreathlab/houghton.hpp"
#include "wreathlab/io.hpp"
#include "wreathlab/lhs.hpp"
#include "wreathlab/matrix.hpp"
#include "wreathlab/polyprod.hpp"
#include "wreathlab/presentation.hpp"
#include "wreathlab/snf.hpp"
#include "wreathlab/verdict.hpp"
