#pragma once

// Exact calculus of binary-input/binary-output non-signalling boxes: CH
// functionals, couplers for non-locality swapping, theories with bounded
// non-locality, and the wiring enumeration of the full polytope. Everything
// is computed over Q(2^(1/4)), so Tsirelson-bound identities are exact.

#include "boxworld/box.hpp"
#include "boxworld/convex.hpp"
#include "boxworld/errors.hpp"
#include "boxworld/exact_scalar.hpp"
#include "boxworld/functional.hpp"
#include "boxworld/io.hpp"
#include "boxworld/rational.hpp"
#include "boxworld/swap.hpp"
#include "boxworld/theory.hpp"
#include "boxworld/wirings.hpp"
