#pragma once

#include "seb_choa/benchmarks.hpp"
#include "seb_choa/chaos.hpp"
#include "seb_choa/choa.hpp"
#include "seb_choa/config.hpp"
#include "seb_choa/constraints.hpp"
#include "seb_choa/harness.hpp"
#include "seb_choa/problem.hpp"
#include "seb_choa/random_search.hpp"
#include "seb_choa/registry.hpp"
#include "seb_choa/rng.hpp"
#include "seb_choa/run_record.hpp"
#include "seb_choa/spiral.hpp"
#include "seb_choa/stats.hpp"
#include "seb_choa/variants.hpp"
