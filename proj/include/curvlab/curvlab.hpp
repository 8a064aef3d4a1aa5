#pragma once

// Convenience umbrella: pulls in the whole library.

#include "curvlab/cli.hpp"
#include "curvlab/common.hpp"
#include "curvlab/constraints.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/generators.hpp"
#include "curvlab/hermitian_space.hpp"
#include "curvlab/report.hpp"
#include "curvlab/tensor_io.hpp"
#include "curvlab/verifiers.hpp"
