#pragma once

#include "cpzreach/box_lsq.hpp"
#include "cpzreach/cpz.hpp"
#include "cpzreach/errors.hpp"
#include "cpzreach/exact_mult.hpp"
#include "cpzreach/factor.hpp"
#include "cpzreach/identification.hpp"
#include "cpzreach/intersection.hpp"
#include "cpzreach/linalg.hpp"
#include "cpzreach/matrix_sets.hpp"
#include "cpzreach/membership.hpp"
#include "cpzreach/monomials.hpp"
#include "cpzreach/reach.hpp"
#include "cpzreach/rng.hpp"
#include "cpzreach/sampling.hpp"
#include "cpzreach/zonotope.hpp"
