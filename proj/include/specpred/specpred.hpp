#pragma once

#include "specpred/analysis.hpp"
#include "specpred/config.hpp"
#include "specpred/errors.hpp"
#include "specpred/io.hpp"
#include "specpred/kernel.hpp"
#include "specpred/params.hpp"
#include "specpred/predict.hpp"
#include "specpred/report_io.hpp"
#include "specpred/series.hpp"
#include "specpred/signals.hpp"
#include "specpred/spectral.hpp"
#include "specpred/version.hpp"
