#pragma once

#include "vicinity/additive.hpp"
#include "vicinity/config.hpp"
#include "vicinity/degree_reduction.hpp"
#include "vicinity/eval.hpp"
#include "vicinity/generators.hpp"
#include "vicinity/routing.hpp"
#include "vicinity/stretch2.hpp"
#include "vicinity/stretch_mult.hpp"
#include "vicinity/tz_oracle.hpp"
#include "vicinity/verify.hpp"
