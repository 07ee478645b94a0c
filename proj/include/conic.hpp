#pragma once

#include "conic/admissibility.hpp"
#include "conic/conic_bundles.hpp"
#include "conic/construction.hpp"
#include "conic/error.hpp"
#include "conic/fixtures.hpp"
#include "conic/kodaira.hpp"
#include "conic/model_io.hpp"
#include "conic/ns_lattice.hpp"
#include "conic/surface_model.hpp"
