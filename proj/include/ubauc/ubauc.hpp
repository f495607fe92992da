#pragma once

// Umbrella header.

#include "ubauc/baselines.hpp"
#include "ubauc/batch.hpp"
#include "ubauc/dataset.hpp"
#include "ubauc/errors.hpp"
#include "ubauc/experiment.hpp"
#include "ubauc/metrics.hpp"
#include "ubauc/model.hpp"
#include "ubauc/online.hpp"
#include "ubauc/population.hpp"
#include "ubauc/report.hpp"
#include "ubauc/sparse.hpp"
#include "ubauc/surrogate.hpp"
#include "ubauc/synthetic.hpp"
#include "ubauc/topk.hpp"
