#pragma once

#include "vbs/alpha_engine.hpp"
#include "vbs/alpha_number.hpp"
#include "vbs/conversions.hpp"
#include "vbs/error.hpp"
#include "vbs/expansion.hpp"
#include "vbs/oracle.hpp"
#include "vbs/power_value.hpp"
#include "vbs/primes.hpp"
#include "vbs/rational.hpp"
#include "vbs/schedule.hpp"
#include "vbs/sum_approx.hpp"
#include "vbs/verify.hpp"
