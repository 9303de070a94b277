#pragma once

// Umbrella header: pulls in the whole library.

#include "kgprof/errors.hpp"
#include "kgprof/leakage.hpp"
#include "kgprof/metapaths.hpp"
#include "kgprof/parallel.hpp"
#include "kgprof/patterns.hpp"
#include "kgprof/rational.hpp"
#include "kgprof/report.hpp"
#include "kgprof/rng.hpp"
#include "kgprof/stats.hpp"
#include "kgprof/store.hpp"
#include "kgprof/tsv.hpp"
#include "kgprof/version.hpp"
