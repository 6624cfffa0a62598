#pragma once

// Umbrella header.

#include "gnmetric/axioms.hpp"
#include "gnmetric/errors.hpp"
#include "gnmetric/fixed_point.hpp"
#include "gnmetric/metric.hpp"
#include "gnmetric/numerics.hpp"
#include "gnmetric/point.hpp"
#include "gnmetric/rng.hpp"
#include "gnmetric/sequence.hpp"
#include "gnmetric/space.hpp"
