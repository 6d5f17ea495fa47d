#pragma once

#include "telegraph/analytic.hpp"
#include "telegraph/error.hpp"
#include "telegraph/estimate.hpp"
#include "telegraph/ext_real.hpp"
#include "telegraph/io.hpp"
#include "telegraph/model.hpp"
#include "telegraph/numeric_sup.hpp"
#include "telegraph/perturbation.hpp"
#include "telegraph/rng.hpp"
#include "telegraph/series.hpp"
#include "telegraph/simulate.hpp"
#include "telegraph/tables.hpp"
#include "telegraph/verify.hpp"
#include "telegraph/version.hpp"
