#pragma once

// Umbrella header.

#include "matrec/caps.hpp"
#include "matrec/gf2.hpp"
#include "matrec/graphs.hpp"
#include "matrec/matroid.hpp"
#include "matrec/hom.hpp"
#include "matrec/recolor.hpp"
#include "matrec/decision.hpp"
#include "matrec/reduction.hpp"
#include "matrec/io.hpp"
#include "matrec/selfcheck.hpp"
