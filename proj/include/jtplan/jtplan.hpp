#pragma once

// Umbrella header for the jump-table planning toolkit.

#include "jtplan/core.hpp"
#include "jtplan/fraction.hpp"
#include "jtplan/ingest.hpp"
#include "jtplan/json_io.hpp"
#include "jtplan/layout.hpp"
#include "jtplan/predictor.hpp"
