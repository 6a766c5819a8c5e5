#pragma once

// Umbrella header.

#include "hexfade/channel.hpp"
#include "hexfade/geometry.hpp"
#include "hexfade/lsf.hpp"
#include "hexfade/montecarlo.hpp"
#include "hexfade/quadrature.hpp"
#include "hexfade/rng.hpp"
#include "hexfade/sampling.hpp"
