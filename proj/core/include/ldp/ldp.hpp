#pragma once

#include "ldp/benchmark.hpp"
#include "ldp/constants.hpp"
#include "ldp/d3q19.hpp"
#include "ldp/error.hpp"
#include "ldp/execution.hpp"
#include "ldp/field_io.hpp"
#include "ldp/kernels.hpp"
#include "ldp/lattice.hpp"
#include "ldp/runner.hpp"
#include "ldp/target_memory.hpp"
#include "ldp/verify.hpp"
