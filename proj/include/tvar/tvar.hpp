#pragma once

#include "tvar/error.hpp"
#include "tvar/rational.hpp"
#include "tvar/linalg.hpp"
#include "tvar/lattice.hpp"
#include "tvar/polyhedra.hpp"
#include "tvar/polynomial.hpp"
#include "tvar/base_curve.hpp"
#include "tvar/polyhedral_divisor.hpp"
#include "tvar/lnd.hpp"
#include "tvar/invariants.hpp"
#include "tvar/serialize.hpp"
