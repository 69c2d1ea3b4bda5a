#pragma once

#include "spectral_seed/bandwidth.hpp"
#include "spectral_seed/datagen.hpp"
#include "spectral_seed/error.hpp"
#include "spectral_seed/grid.hpp"
#include "spectral_seed/peaks.hpp"
#include "spectral_seed/pipeline.hpp"
#include "spectral_seed/seeding.hpp"
#include "spectral_seed/spectral.hpp"
