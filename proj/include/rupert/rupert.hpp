#pragma once

// Umbrella header for the box Rupert-passage toolkit.

#include "rupert/cross_section.hpp"
#include "rupert/homothet.hpp"
#include "rupert/nieuwland.hpp"
#include "rupert/orientation.hpp"
#include "rupert/parallel.hpp"
#include "rupert/passage.hpp"
#include "rupert/polygon.hpp"
#include "rupert/random.hpp"
#include "rupert/shadow.hpp"
#include "rupert/tolerances.hpp"
#include "rupert/vec.hpp"
