#pragma once

#include "cuspforge/algebra/chain_complex.hpp"
#include "cuspforge/algebra/cup_product.hpp"
#include "cuspforge/algebra/gf2.hpp"
#include "cuspforge/algebra/homology.hpp"
#include "cuspforge/algebra/int_matrix.hpp"
#include "cuspforge/characteristic.hpp"
#include "cuspforge/cubical.hpp"
#include "cuspforge/duality.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/face_lattice.hpp"
#include "cuspforge/filling.hpp"
#include "cuspforge/io.hpp"
#include "cuspforge/isomorphism.hpp"
#include "cuspforge/moment_angle.hpp"
#include "cuspforge/pipeline.hpp"
#include "cuspforge/polytope_zoo.hpp"
#include "cuspforge/simplicial.hpp"
