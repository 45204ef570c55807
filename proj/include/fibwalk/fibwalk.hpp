#pragma once

#include "fibwalk/analytics.hpp"
#include "fibwalk/coefficients.hpp"
#include "fibwalk/continuant.hpp"
#include "fibwalk/derive.hpp"
#include "fibwalk/errors.hpp"
#include "fibwalk/fibonacci.hpp"
#include "fibwalk/oracle.hpp"
#include "fibwalk/report.hpp"
#include "fibwalk/results.hpp"
#include "fibwalk/scaled_real.hpp"
#include "fibwalk/simulate.hpp"
#include "fibwalk/spec_io.hpp"
#include "fibwalk/walk_spec.hpp"
