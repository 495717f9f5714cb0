#pragma once

// Umbrella header: classification, synthesis, and numerical verification of
// affine self-similar solutions of the affine curve shortening flow.

#include "affsol/action.hpp"
#include "affsol/classify.hpp"
#include "affsol/csv.hpp"
#include "affsol/curve.hpp"
#include "affsol/errors.hpp"
#include "affsol/geometry.hpp"
#include "affsol/phase.hpp"
#include "affsol/quadrature.hpp"
#include "affsol/rk45.hpp"
#include "affsol/rng.hpp"
#include "affsol/soliton.hpp"
#include "affsol/svg.hpp"
#include "affsol/synthesis.hpp"
#include "affsol/verify.hpp"
