#pragma once

// Umbrella header for the knapfeat library: exact structural features of
// 0-1 knapsack instances derived from their inclusionwise maximal
// solutions, with brute-force cross-checks and an export pipeline.

#include "knapfeat/brute_force.hpp"
#include "knapfeat/cardinality.hpp"
#include "knapfeat/clustering.hpp"
#include "knapfeat/csv.hpp"
#include "knapfeat/errors.hpp"
#include "knapfeat/features.hpp"
#include "knapfeat/ims_counting.hpp"
#include "knapfeat/instance.hpp"
#include "knapfeat/log_count.hpp"
#include "knapfeat/lower_bound.hpp"
#include "knapfeat/normalization.hpp"
#include "knapfeat/parallel.hpp"
#include "knapfeat/projection.hpp"
#include "knapfeat/random.hpp"
