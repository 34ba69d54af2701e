#pragma once

// Exact arithmetic for additive subgroups of R^2 with positive cone and
// order unit: membership and matrix-invariance decisions, replayable
// invariance certificates, and realization reports for the cyclic
// diagonal-scaling groups.

#include "diminv/action.hpp"
#include "diminv/algebraic.hpp"
#include "diminv/bezout.hpp"
#include "diminv/certificates.hpp"
#include "diminv/cubic.hpp"
#include "diminv/density.hpp"
#include "diminv/errors.hpp"
#include "diminv/fgroup.hpp"
#include "diminv/integers.hpp"
#include "diminv/interval.hpp"
#include "diminv/json_io.hpp"
#include "diminv/laurent.hpp"
#include "diminv/monomial.hpp"
#include "diminv/poly.hpp"
#include "diminv/presentation.hpp"
#include "diminv/qadic.hpp"
#include "diminv/ratfunc.hpp"
#include "diminv/rational.hpp"
#include "diminv/symbolic.hpp"
