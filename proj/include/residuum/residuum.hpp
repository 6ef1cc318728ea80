#pragma once

// Umbrella header: exact residue algebra, the tau-regularized numeric
// engines, and the certificate provers built on them.

#include "residuum/bm.hpp"
#include "residuum/groebner.hpp"
#include "residuum/hefer.hpp"
#include "residuum/ideal.hpp"
#include "residuum/matrix.hpp"
#include "residuum/netto.hpp"
#include "residuum/parse.hpp"
#include "residuum/polynomial.hpp"
#include "residuum/projective.hpp"
#include "residuum/quadrature.hpp"
#include "residuum/rational.hpp"
#include "residuum/residue.hpp"
#include "residuum/sections.hpp"
#include "residuum/verify.hpp"
#include "residuum/version.hpp"
