#pragma once

// Ambient homology classes of one-cycles in point clouds on the torus, the
// Klein bottle, the projective plane and the genus-two surface.

#include "abelian_class.hpp"
#include "complex.hpp"
#include "error.hpp"
#include "flat.hpp"
#include "genus_two.hpp"
#include "geometry.hpp"
#include "options.hpp"
#include "persistence.hpp"
#include "projective_plane.hpp"
#include "surface_kind.hpp"
#include "transition.hpp"
