#pragma once

#include "common.hpp"
#include "density.hpp"
#include "density_csv.hpp"
#include "fields.hpp"
#include "finite_difference.hpp"
#include "kernel.hpp"
#include "metrics.hpp"
#include "multi_index.hpp"
#include "potential.hpp"
#include "quadrature.hpp"
#include "registry.hpp"
#include "scalar_field.hpp"
#include "taylor.hpp"
