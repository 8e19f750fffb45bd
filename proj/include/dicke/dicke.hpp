#pragma once

#include "dicke/bath.hpp"
#include "dicke/correlations.hpp"
#include "dicke/cycle.hpp"
#include "dicke/ecs.hpp"
#include "dicke/errors.hpp"
#include "dicke/hp_limits.hpp"
#include "dicke/model.hpp"
#include "dicke/spectral.hpp"
#include "dicke/sweep.hpp"
#include "dicke/version.hpp"
