#pragma once

// Umbrella header for the descff library: multi-breather form factors of
// descendant operators in the sinh/sine-Gordon model, evaluated by the
// combinatorial subset-sum kernel and by the free-field Fock oracle.

#include "algebra.hpp"
#include "core.hpp"
#include "element.hpp"
#include "fock.hpp"
#include "identities.hpp"
#include "jfunctions.hpp"
#include "kink.hpp"
#include "linalg.hpp"
#include "partition.hpp"
#include "quadrature.hpp"
#include "reflection.hpp"
#include "rho_laurent.hpp"
#include "special_functions.hpp"
