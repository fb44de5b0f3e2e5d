#pragma once

// Umbrella header: the full bivariate causal direction toolkit.

#include "bilingam/core.hpp"
#include "bilingam/csv.hpp"
#include "bilingam/datagen.hpp"
#include "bilingam/decision.hpp"
#include "bilingam/detector.hpp"
#include "bilingam/errors.hpp"
#include "bilingam/experiments.hpp"
#include "bilingam/gaussianity.hpp"
#include "bilingam/hsic.hpp"
#include "bilingam/independence.hpp"
#include "bilingam/rng.hpp"
#include "bilingam/series.hpp"
#include "bilingam/special.hpp"

// Version of the library interface, bumped on breaking changes.
#define BILINGAM_VERSION_MAJOR 1
#define BILINGAM_VERSION_MINOR 0
#define BILINGAM_VERSION_PATCH 0
