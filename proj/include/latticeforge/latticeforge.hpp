#pragma once

#include "latticeforge/error.hpp"
#include "latticeforge/util.hpp"
#include "latticeforge/finite_field.hpp"
#include "latticeforge/presentation.hpp"
#include "latticeforge/ff_lattice.hpp"
#include "latticeforge/hurwitz.hpp"
#include "latticeforge/cubical.hpp"
#include "latticeforge/quotient.hpp"
#include "latticeforge/parallel.hpp"
#include "latticeforge/spectral.hpp"
