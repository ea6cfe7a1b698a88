#pragma once

#include "qeof/core/complex_matrix.hpp"
#include "qeof/core/svd.hpp"
#include "qeof/errors.hpp"
#include "qeof/measurement/estimator.hpp"
#include "qeof/measurement/observables.hpp"
#include "qeof/measurement/sampling.hpp"
#include "qeof/projections.hpp"
#include "qeof/reconstruction.hpp"
#include "qeof/state_gen.hpp"
#include "qeof/states.hpp"
#include "qeof/tolerances.hpp"
