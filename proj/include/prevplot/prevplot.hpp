#pragma once

// Umbrella header: assay evaluation with prevalence-aware translation.

#include "prevplot/csv.hpp"
#include "prevplot/errors.hpp"
#include "prevplot/format.hpp"
#include "prevplot/metrics.hpp"
#include "prevplot/normal.hpp"
#include "prevplot/plot.hpp"
#include "prevplot/report.hpp"
#include "prevplot/roc.hpp"
#include "prevplot/sweep.hpp"
