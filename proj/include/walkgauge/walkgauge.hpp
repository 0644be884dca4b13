#pragma once

#include "walkgauge/entropy.hpp"
#include "walkgauge/error.hpp"
#include "walkgauge/exact_walks.hpp"
#include "walkgauge/families.hpp"
#include "walkgauge/graph.hpp"
#include "walkgauge/io.hpp"
#include "walkgauge/report.hpp"
#include "walkgauge/spectral.hpp"
#include "walkgauge/verify.hpp"
