#pragma once

#include "frob/arith.hpp"
#include "frob/budget.hpp"
#include "frob/construction.hpp"
#include "frob/covering.hpp"
#include "frob/error.hpp"
#include "frob/frobenius.hpp"
#include "frob/harness.hpp"
#include "frob/interval.hpp"
#include "frob/lattice.hpp"
#include "frob/matrix.hpp"
#include "frob/mu0_search.hpp"
#include "frob/polygon.hpp"
#include "frob/polynomial.hpp"
#include "frob/report.hpp"
