#pragma once

// Umbrella header: the whole library.

#include "hermitia/core.hpp"
#include "hermitia/form.hpp"
#include "hermitia/structure.hpp"
#include "hermitia/connection.hpp"
#include "hermitia/curvature.hpp"
#include "hermitia/analysis.hpp"
#include "hermitia/models.hpp"
#include "hermitia/algebra_io.hpp"
#include "hermitia/report.hpp"
