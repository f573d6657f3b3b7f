// Umbrella header.
#pragma once

#include "congru/algebras.hpp"
#include "congru/error.hpp"
#include "congru/factor.hpp"
#include "congru/field.hpp"
#include "congru/gadgets.hpp"
#include "congru/json_io.hpp"
#include "congru/linalg.hpp"
#include "congru/matrix.hpp"
#include "congru/mobius.hpp"
#include "congru/oracles.hpp"
#include "congru/polynomial.hpp"
#include "congru/random.hpp"
#include "congru/selftest.hpp"
#include "congru/skew_pencil.hpp"
#include "congru/smith.hpp"
#include "congru/tuples.hpp"
