#pragma once

#include "hyperclass/areas.hpp"
#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/essential_points.hpp"
#include "hyperclass/goldbach.hpp"
#include "hyperclass/hyperbola.hpp"
#include "hyperclass/numeric.hpp"
#include "hyperclass/oracles.hpp"
#include "hyperclass/polynomial.hpp"
#include "hyperclass/primes.hpp"
#include "hyperclass/regions.hpp"
#include "hyperclass/total_area.hpp"
