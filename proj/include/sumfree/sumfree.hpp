#pragma once

// Bounds and witnesses for the maximal density of sumfree (and l-fold
// sumfree) subsets of discrete boxes {1..n}^k and of the cube [0,1]^k.

#include "sumfree/bounds.hpp"
#include "sumfree/constructions.hpp"
#include "sumfree/exact_math.hpp"
#include "sumfree/rational.hpp"
#include "sumfree/search.hpp"
#include "sumfree/version.hpp"
