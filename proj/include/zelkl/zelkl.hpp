#pragma once

// Umbrella header for the whole engine.

#include "zelkl/bigint.hpp"
#include "zelkl/branching.hpp"
#include "zelkl/config.hpp"
#include "zelkl/errors.hpp"
#include "zelkl/filtration.hpp"
#include "zelkl/grothendieck.hpp"
#include "zelkl/klpoly.hpp"
#include "zelkl/permutation.hpp"
#include "zelkl/polynomial.hpp"
#include "zelkl/random_instances.hpp"
#include "zelkl/rational.hpp"
#include "zelkl/segment.hpp"
#include "zelkl/stratification.hpp"
