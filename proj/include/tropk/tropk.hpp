#pragma once

// Umbrella header.

#include "tropk/errors.hpp"
#include "tropk/semiring.hpp"
#include "tropk/vector.hpp"
#include "tropk/kernel_matrix.hpp"
#include "tropk/semimodule.hpp"
#include "tropk/random.hpp"
#include "tropk/operator.hpp"
#include "tropk/semimetric.hpp"
#include "tropk/nuclearity.hpp"
#include "tropk/theorems.hpp"
#include "tropk/instances.hpp"
#include "tropk/io.hpp"
