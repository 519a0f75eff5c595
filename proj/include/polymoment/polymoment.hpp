#ifndef POLYMOMENT_POLYMOMENT_HPP
#define POLYMOMENT_POLYMOMENT_HPP

// Umbrella header: decides and certifies whether a polynomial q is orthogonal
// to all powers of a polynomial P on a segment [a, b], via the monodromy of
// P, the combinatorics of its cactus, Puiseux expansions at infinity, and
// composition certificates.

#include "polymoment/cactus.hpp"
#include "polymoment/circle_sets.hpp"
#include "polymoment/classify.hpp"
#include "polymoment/complexutil.hpp"
#include "polymoment/continuation.hpp"
#include "polymoment/decompose.hpp"
#include "polymoment/errors.hpp"
#include "polymoment/io.hpp"
#include "polymoment/moments.hpp"
#include "polymoment/permutation.hpp"
#include "polymoment/polynomial.hpp"
#include "polymoment/puiseux.hpp"
#include "polymoment/roots.hpp"

#endif
